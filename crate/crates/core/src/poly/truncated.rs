use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::chart::{Chart, ChartError};
use super::rational::{fmt_rational, is_negative, parse_rational, rational_to_f64, Rational};

/// Exponent vector, one entry per chart coordinate.
pub type Monomial = Vec<u8>;

/// Sparse polynomial with exact rational coefficients, truncated by total
/// degree.
///
/// Binary operations on polynomials with different truncation degrees keep
/// the smaller one, since terms above it are not known in the other operand.
#[derive(Clone, Debug)]
pub struct TruncatedPoly {
    chart: Arc<Chart>,
    degree: u32,
    terms: BTreeMap<Monomial, Rational>,
}

fn total(m: &[u8]) -> u32 {
    m.iter().map(|&e| e as u32).sum()
}

fn same_chart(a: &Arc<Chart>, b: &Arc<Chart>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl PartialEq for TruncatedPoly {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && same_chart(&self.chart, &other.chart)
            && self.terms == other.terms
    }
}

impl Eq for TruncatedPoly {}

impl TruncatedPoly {
    pub fn zero(chart: &Arc<Chart>, degree: u32) -> Self {
        TruncatedPoly {
            chart: chart.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(chart: &Arc<Chart>, degree: u32, c: Rational) -> Self {
        let mut p = Self::zero(chart, degree);
        p.add_term(vec![0; chart.len()], c);
        p
    }

    pub fn one(chart: &Arc<Chart>, degree: u32) -> Self {
        Self::constant(chart, degree, Rational::one())
    }

    /// The coordinate function with index `i`.
    pub fn coordinate(chart: &Arc<Chart>, degree: u32, i: usize) -> Self {
        let mut m = vec![0; chart.len()];
        m[i] = 1;
        let mut p = Self::zero(chart, degree);
        p.add_term(m, Rational::one());
        p
    }

    pub fn var(chart: &Arc<Chart>, degree: u32, name: &str) -> Result<Self, ChartError> {
        Ok(Self::coordinate(chart, degree, chart.index(name)?))
    }

    /// Single term `coeff * prod x_i^{exps_i}`.
    pub fn monomial(chart: &Arc<Chart>, degree: u32, exps: Monomial, coeff: Rational) -> Self {
        assert_eq!(exps.len(), chart.len(), "exponent vector length");
        let mut p = Self::zero(chart, degree);
        p.add_term(exps, coeff);
        p
    }

    pub fn from_terms(
        chart: &Arc<Chart>,
        degree: u32,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut p = Self::zero(chart, degree);
        for (m, c) in terms {
            assert_eq!(m.len(), chart.len(), "exponent vector length");
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() || total(&m) > self.degree {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u8]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of a monomial given as `(name, exponent)` pairs.
    pub fn coeff_of(&self, factors: &[(&str, u8)]) -> Result<Rational, ChartError> {
        let mut m = vec![0u8; self.chart.len()];
        for (name, e) in factors {
            m[self.chart.index(name)?] += e;
        }
        Ok(self.coeff(&m))
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.chart.len()])
    }

    /// Lowest total degree among stored terms (`None` for zero).
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| total(m)).min()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| total(m)).max()
    }

    /// Part of total degree exactly `d`.
    pub fn homogeneous(&self, d: u32) -> Self {
        let mut p = Self::zero(&self.chart, self.degree);
        for (m, c) in &self.terms {
            if total(m) == d {
                p.terms.insert(m.clone(), c.clone());
            }
        }
        p
    }

    /// Drops terms above `d`; the truncation degree becomes `min(d, degree)`.
    pub fn truncate(&self, d: u32) -> Self {
        let degree = d.min(self.degree);
        TruncatedPoly {
            chart: self.chart.clone(),
            degree,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| total(m) <= degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    fn check(&self, other: &Self) -> Result<(), ChartError> {
        if same_chart(&self.chart, &other.chart) {
            Ok(())
        } else {
            Err(ChartError::Mismatch {
                left: self.chart.summary(),
                right: other.chart.summary(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ChartError> {
        self.check(other)?;
        let mut out = self.truncate(other.degree);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ChartError> {
        self.check(other)?;
        let mut out = self.truncate(other.degree);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ChartError> {
        self.check(other)?;
        let degree = self.degree.min(other.degree);
        let mut out = Self::zero(&self.chart, degree);
        if self.is_zero() || other.is_zero() {
            return Ok(out);
        }
        let mut rhs: Vec<(u32, &Monomial, &Rational)> =
            other.terms.iter().map(|(m, c)| (total(m), m, c)).collect();
        rhs.sort_by_key(|t| t.0);
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            let da = total(ma);
            if da > degree {
                continue;
            }
            for (db, mb, cb) in &rhs {
                if da + db > degree {
                    break;
                }
                let m: Monomial = ma.iter().zip(mb.iter()).map(|(x, y)| x + y).collect();
                let c = ca * *cb;
                *acc.entry(m).or_insert_with(Rational::zero) += c;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        out.terms = acc;
        Ok(out)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero(&self.chart, self.degree);
        }
        TruncatedPoly {
            chart: self.chart.clone(),
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * k))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(&self.chart, self.degree);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Formal partial derivative with respect to coordinate `i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.chart, self.degree);
        for (m, c) in &self.terms {
            if m[i] > 0 {
                let mut d = m.clone();
                d[i] -= 1;
                out.terms.insert(d, c * Rational::from_integer(m[i].into()));
            }
        }
        out
    }

    pub fn partial_by(&self, name: &str) -> Result<Self, ChartError> {
        Ok(self.partial(self.chart.index(name)?))
    }

    /// Composition: coordinate `i` is replaced by `images[i]`. All images
    /// must share one chart, which becomes the chart of the result.
    pub fn compose(&self, images: &[TruncatedPoly]) -> Result<Self, ChartError> {
        assert_eq!(images.len(), self.chart.len(), "one image per coordinate");
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        let target = first.chart.clone();
        for img in images {
            first.check(img)?;
        }
        let degree = images.iter().map(|p| p.degree).min().unwrap_or(self.degree);
        let n = self.chart.len();
        // powers[i][k] = images[i]^k, filled on demand
        let mut powers: Vec<Vec<TruncatedPoly>> = images
            .iter()
            .map(|p| vec![TruncatedPoly::one(&target, degree), p.truncate(degree)])
            .collect();
        let mut out = TruncatedPoly::zero(&target, degree);
        for (m, c) in &self.terms {
            let mut term = TruncatedPoly::constant(&target, degree, c.clone());
            for i in 0..n {
                let e = m[i] as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &powers[i][1];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e];
                if term.is_zero() {
                    break;
                }
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Replaces the named coordinates by the given polynomials. Unbound
    /// coordinates are carried over by name to the bindings' chart.
    pub fn substitute(&self, bindings: &[(&str, TruncatedPoly)]) -> Result<Self, ChartError> {
        let Some((_, first)) = bindings.first() else {
            return Ok(self.clone());
        };
        let target = first.chart.clone();
        let degree = bindings.iter().map(|(_, p)| p.degree).min().unwrap();
        for (name, _) in bindings {
            self.chart.index(name)?;
        }
        let mut images = Vec::with_capacity(self.chart.len());
        for (i, coord) in self.chart.coords().iter().enumerate() {
            match bindings.iter().find(|(n, _)| *n == coord.name) {
                Some((_, p)) => images.push(p.clone()),
                None => {
                    let used = self.terms.keys().any(|m| m[i] > 0);
                    match target.index(&coord.name) {
                        Ok(j) => images.push(TruncatedPoly::coordinate(&target, degree, j)),
                        Err(e) if used => return Err(e),
                        Err(_) => images.push(TruncatedPoly::zero(&target, degree)),
                    }
                }
            }
        }
        self.compose(&images)
    }

    /// Same polynomial expressed on another chart, matching coordinates by
    /// name. Every coordinate actually used must exist in `target`.
    pub fn embed(&self, target: &Arc<Chart>) -> Result<Self, ChartError> {
        let mut out = Self::zero(target, self.degree);
        let map: Vec<Option<usize>> = self
            .chart
            .names()
            .map(|n| target.index(n).ok())
            .collect();
        for (m, c) in &self.terms {
            let mut tm = vec![0u8; target.len()];
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    let j = map[i]
                        .ok_or_else(|| ChartError::UnknownCoordinate(self.chart.name(i).into()))?;
                    tm[j] += e;
                }
            }
            out.add_term(tm, c.clone());
        }
        Ok(out)
    }

    /// Sets coordinate `i` to zero.
    pub fn at_zero(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.chart, self.degree);
        for (m, c) in &self.terms {
            if m[i] == 0 {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.chart.len(), "point dimension");
        let mut sum = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.iter()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            sum += t;
        }
        sum
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.chart.len(), "point dimension");
        self.terms
            .iter()
            .map(|(m, c)| {
                m.iter()
                    .zip(point.iter())
                    .fold(rational_to_f64(c), |acc, (&e, x)| acc * x.powi(e as i32))
            })
            .sum()
    }

    /// Does the polynomial depend on coordinate `i`?
    pub fn depends_on(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m[i] > 0)
    }

    /// Canonical text: terms in lexicographic multi-index order, `num/den`
    /// coefficients, `name^e` factors joined by `*`.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = is_negative(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.chart.name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.chart.name(i), e)),
                }
            }
            if factors.is_empty() || !abs.is_one() {
                factors.insert(0, fmt_rational(&abs));
            }
            s.push_str(&factors.join("*"));
        }
        s
    }

    /// Inverse of [`to_text`](Self::to_text). Accepts any term order and
    /// repeated factors.
    pub fn parse_text(chart: &Arc<Chart>, degree: u32, text: &str) -> Result<Self, String> {
        let mut out = Self::zero(chart, degree);
        let text = text.trim();
        if text == "0" {
            return Ok(out);
        }
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (pos, ch) in text.char_indices() {
            let boundary = (ch == '+' || ch == '-')
                && !text[..pos].trim_end().ends_with(['*', '/', '^'])
                && !text[..pos].trim().is_empty();
            if boundary {
                chunks.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '-') && text[..pos].trim().is_empty() {
                neg = true;
            } else {
                cur.push(ch);
            }
        }
        chunks.push((neg, cur));
        for (neg, chunk) in chunks {
            let mut coeff = Rational::one();
            let mut m = vec![0u8; chart.len()];
            for factor in chunk.split('*').map(str::trim) {
                if factor.is_empty() {
                    return Err(format!("empty factor in {chunk:?}"));
                }
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    coeff *= parse_rational(factor).map_err(|e| e.to_string())?;
                    continue;
                }
                let (name, e) = match factor.split_once('^') {
                    Some((n, e)) => (n, e.parse::<u8>().map_err(|e| e.to_string())?),
                    None => (factor, 1),
                };
                m[chart.index(name).map_err(|e| e.to_string())?] += e;
            }
            out.add_term(m, if neg { -coeff } else { coeff });
        }
        Ok(out)
    }
}

impl fmt::Display for TruncatedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

// Operator forms panic on chart mismatch; the `try_*` methods report it.

impl Add for &TruncatedPoly {
    type Output = TruncatedPoly;
    fn add(self, rhs: &TruncatedPoly) -> TruncatedPoly {
        self.try_add(rhs).expect("chart mismatch in add")
    }
}

impl Sub for &TruncatedPoly {
    type Output = TruncatedPoly;
    fn sub(self, rhs: &TruncatedPoly) -> TruncatedPoly {
        self.try_sub(rhs).expect("chart mismatch in sub")
    }
}

impl Mul for &TruncatedPoly {
    type Output = TruncatedPoly;
    fn mul(self, rhs: &TruncatedPoly) -> TruncatedPoly {
        self.try_mul(rhs).expect("chart mismatch in mul")
    }
}

impl Neg for &TruncatedPoly {
    type Output = TruncatedPoly;
    fn neg(self) -> TruncatedPoly {
        self.scale(&-Rational::one())
    }
}

impl Add for TruncatedPoly {
    type Output = TruncatedPoly;
    fn add(self, rhs: TruncatedPoly) -> TruncatedPoly {
        &self + &rhs
    }
}

impl Sub for TruncatedPoly {
    type Output = TruncatedPoly;
    fn sub(self, rhs: TruncatedPoly) -> TruncatedPoly {
        &self - &rhs
    }
}

impl Mul for TruncatedPoly {
    type Output = TruncatedPoly;
    fn mul(self, rhs: TruncatedPoly) -> TruncatedPoly {
        &self * &rhs
    }
}

impl Neg for TruncatedPoly {
    type Output = TruncatedPoly;
    fn neg(self) -> TruncatedPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat, Role};

    fn xy(d: u32) -> (Arc<Chart>, TruncatedPoly, TruncatedPoly) {
        let c = Chart::new([("x", Role::Space), ("y", Role::Space)]).unwrap();
        let x = TruncatedPoly::var(&c, d, "x").unwrap();
        let y = TruncatedPoly::var(&c, d, "y").unwrap();
        (c, x, y)
    }

    #[test]
    fn cancellation_and_identity() {
        let (c, x, y) = xy(3);
        assert_eq!(&(&x + &y) + &(&x - &y), x.scale(&int(2)));
        let z = TruncatedPoly::zero(&c, 3);
        assert_eq!(&x + &z, x);
    }

    #[test]
    fn sum_is_truncated() {
        let (_, x, y) = xy(2);
        let xy2 = TruncatedPoly::from_terms(x.chart(), 2, [(vec![2, 1], int(1))]);
        assert!(xy2.is_zero());
        assert_eq!(&(&x * &y) + &xy2, &x * &y);
    }

    #[test]
    fn product_truncation() {
        let (c, x, _) = xy(3);
        let one = TruncatedPoly::one(&c, 3);
        assert_eq!((&one + &x) * (&one - &x), &one - &x.pow(2));
        assert!(x.pow(2).try_mul(&x.pow(2)).unwrap().is_zero());
    }

    #[test]
    fn derivatives() {
        let (_, x, y) = xy(4);
        let p = &x.pow(2) * &y;
        assert_eq!(p.partial(0), (&x * &y).scale(&int(2)));
        assert!(TruncatedPoly::one(x.chart(), 4).partial(0).is_zero());
    }

    #[test]
    fn canonical_text() {
        let c = Chart::new([("t", Role::Time), ("v1", Role::Velocity)]).unwrap();
        let t = TruncatedPoly::var(&c, 3, "t").unwrap();
        let v = TruncatedPoly::var(&c, 3, "v1").unwrap();
        let p = (&t * &v.pow(2)).scale(&rat(-1, 2));
        assert_eq!(p.to_text(), "-1/2*t*v1^2");
        let q = &(&p + &v) - &TruncatedPoly::one(&c, 3);
        assert_eq!(q.to_text(), "-1 + v1 - 1/2*t*v1^2");
        assert_eq!(TruncatedPoly::parse_text(&c, 3, &q.to_text()).unwrap(), q);
        assert_eq!(TruncatedPoly::zero(&c, 3).to_text(), "0");
    }

    #[test]
    fn substitution() {
        let (c, x, _) = xy(3);
        let d = c.doubled();
        let xp = TruncatedPoly::var(&d, 3, "x'").unwrap();
        let x0 = TruncatedPoly::var(&d, 3, "x").unwrap();
        let s = x.pow(2).substitute(&[("x", &xp + &x0)]).unwrap();
        assert_eq!(s, (&xp + &x0).pow(2));
        let same = x.pow(2).embed(&d).unwrap();
        assert_eq!(x.pow(2).substitute(&[("x", x0.clone())]).unwrap(), same);
    }

    #[test]
    fn chart_mismatch_is_reported() {
        let (_, x, _) = xy(3);
        let other = Chart::new([("z", Role::Space)]).unwrap();
        let z = TruncatedPoly::var(&other, 3, "z").unwrap();
        assert!(matches!(x.try_add(&z), Err(ChartError::Mismatch { .. })));
        assert!(x.partial_by("q").is_err());
    }
}
