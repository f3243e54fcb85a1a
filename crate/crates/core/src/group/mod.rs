//! Formal group laws: truncated BCH exponentiation of an algebra, the
//! closed-form extended Galilei law, and axiom checks.

pub mod bch;
mod closed_form;
mod peg_law;

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{AlgebraError, AlgebraSpec, LieElement, CENTRAL};
use crate::poly::{Chart, ChartError, Rational, Role, TruncatedPoly};

pub use closed_form::{
    check_closed_form, closed_form_ge, ge_chart, random_element, random_element_f64, ClosedFormGE,
    ClosedFormReport, DomainError, GeElement, Scalar,
};
pub use peg_law::{compare_commutators, compare_terms, group_law_peg, TermMismatch};

/// Chart coordinate name used for the central generator.
pub const PHASE: &str = "phi";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LawError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("truncation order must be between 1 and {max}, got {got}")]
    Order { got: u32, max: u32 },
    #[error("invalid generator ordering: {0}")]
    Ordering(String),
    #[error("generators {0:?} do not span a subalgebra")]
    NotSubalgebra(Vec<String>),
    #[error(transparent)]
    Chart(#[from] ChartError),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("{0}")]
    Unsupported(String),
}

/// Coordinate name for an algebra generator label.
pub fn coordinate_name(label: &str) -> String {
    if label == CENTRAL {
        PHASE.to_string()
    } else {
        label.to_string()
    }
}

fn role_for(label: &str) -> Role {
    if label == CENTRAL {
        return Role::Phase;
    }
    match label.chars().next() {
        Some('e') => Role::Rotation,
        Some('h') => Role::MetricPerturbation,
        Some('A') => Role::Potential,
        Some('v' | 'V') => Role::Velocity,
        _ if label == "t" || label.starts_with('b') => Role::Time,
        _ => Role::Space,
    }
}

/// One coordinate per generator, in generator order; the central generator
/// becomes the phase coordinate [`PHASE`].
pub fn chart_for(alg: &AlgebraSpec) -> Arc<Chart> {
    Chart::new(alg.labels().iter().map(|l| (coordinate_name(l), role_for(l))))
        .expect("generator labels are distinct")
}

/// Span of the named generators, checked for closure.
pub fn subalgebra(alg: &AlgebraSpec, keep: &[&str]) -> Result<AlgebraSpec, LawError> {
    let idx: Vec<usize> = keep
        .iter()
        .map(|l| alg.index(l).map_err(AlgebraError::from))
        .collect::<Result<_, _>>()?;
    let labels = idx.iter().map(|&i| alg.label(i).to_string()).collect();
    let mut out = AlgebraSpec::new(&alg.name, labels, alg.constants.clone());
    for (a, &i) in idx.iter().enumerate() {
        for (b, &j) in idx.iter().enumerate().skip(a + 1) {
            let mut e = LieElement::zero();
            for (k, c) in alg.structure(i, j).terms() {
                match idx.iter().position(|&x| x == k) {
                    Some(p) => e.add_term(p, c.clone()),
                    None => {
                        return Err(LawError::NotSubalgebra(
                            keep.iter().map(|s| s.to_string()).collect(),
                        ))
                    }
                }
            }
            out.set_bracket(a, b, e);
        }
    }
    Ok(out)
}

/// Partition of the generators into blocks. The group element with
/// coordinates `z` is `exp(Σ_{B_1} z_i X_i) · exp(Σ_{B_2} z_i X_i) · …`;
/// singleton blocks give coordinates of the second kind and a single block
/// gives canonical (first-kind) coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockOrdering {
    pub blocks: Vec<Vec<usize>>,
}

impl BlockOrdering {
    pub fn first_kind(alg: &AlgebraSpec) -> Self {
        BlockOrdering {
            blocks: vec![(0..alg.dim()).collect()],
        }
    }

    /// One block per generator, in registration order.
    pub fn second_kind(alg: &AlgebraSpec) -> Self {
        BlockOrdering {
            blocks: (0..alg.dim()).map(|i| vec![i]).collect(),
        }
    }

    pub fn from_labels(alg: &AlgebraSpec, blocks: &[&[&str]]) -> Result<Self, LawError> {
        let blocks = blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|l| alg.index(l).map_err(AlgebraError::from))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let o = BlockOrdering { blocks };
        o.validate(alg.dim())?;
        Ok(o)
    }

    /// Blocks matching the usual coordinates of the catalog algebras:
    /// for `GE_electromagnetic` the closed-form law is reproduced by
    /// `exp(tX_t) exp(x·X_x) exp(A·X_A) exp(A0 X_A0) exp(v·X_v)` (rotations
    /// and phase in front); for `PEG_electrograv` the blocks are
    /// `[x | A | (ε, h) | Ξ]`. Anything else uses [`Self::second_kind`].
    pub fn canonical(alg: &AlgebraSpec) -> Self {
        let find = |pred: &dyn Fn(&str) -> bool| -> Vec<usize> {
            (0..alg.dim()).filter(|&i| pred(alg.label(i))).collect()
        };
        match alg.name.as_str() {
            "GE_electromagnetic" => {
                let mut blocks: Vec<Vec<usize>> = Vec::new();
                for group in [
                    find(&|l| l == CENTRAL),
                    find(&|l| l == "t"),
                    find(&|l| l.starts_with('x')),
                    find(&|l| l.starts_with('A') && l != "A0"),
                    find(&|l| l == "A0"),
                    find(&|l| l.starts_with('v')),
                ] {
                    blocks.extend(group.into_iter().map(|i| vec![i]));
                }
                blocks.push(find(&|l| l.starts_with('e')));
                let o = BlockOrdering { blocks };
                if o.validate(alg.dim()).is_ok() {
                    return o;
                }
                Self::second_kind(alg)
            }
            "PEG_electrograv" => {
                let o = BlockOrdering {
                    blocks: vec![
                        find(&|l| l.starts_with('x')),
                        find(&|l| l.starts_with('A')),
                        find(&|l| l.starts_with('e') || l.starts_with('h')),
                        find(&|l| l == CENTRAL),
                    ],
                };
                if o.validate(alg.dim()).is_ok() {
                    return o;
                }
                Self::second_kind(alg)
            }
            _ => Self::second_kind(alg),
        }
    }

    fn validate(&self, dim: usize) -> Result<(), LawError> {
        let mut seen = vec![false; dim];
        for &i in self.blocks.iter().flatten() {
            if i >= dim {
                return Err(LawError::Ordering(format!("index {i} out of range")));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(LawError::Ordering(format!("generator {i} listed twice")));
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(LawError::Ordering(format!("generator {i} missing")));
        }
        if self.blocks.iter().any(Vec::is_empty) {
            return Err(LawError::Ordering("empty block".into()));
        }
        Ok(())
    }
}

/// Group multiplication `g″ = law(g′, g)` as truncated power series on the
/// pair chart `(g′, g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupLaw {
    pub name: String,
    chart: Arc<Chart>,
    pair: Arc<Chart>,
    components: Vec<TruncatedPoly>,
    order: u32,
}

impl GroupLaw {
    pub fn new(name: &str, chart: Arc<Chart>, components: Vec<TruncatedPoly>) -> Self {
        assert_eq!(components.len(), chart.len(), "one component per coordinate");
        let pair = components
            .first()
            .map(|c| c.chart().clone())
            .unwrap_or_else(|| chart.doubled());
        let order = components.iter().map(TruncatedPoly::degree).min().unwrap_or(0);
        GroupLaw {
            name: name.to_string(),
            chart,
            pair,
            components,
            order,
        }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn pair_chart(&self) -> &Arc<Chart> {
        &self.pair
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn components(&self) -> &[TruncatedPoly] {
        &self.components
    }

    pub fn component(&self, name: &str) -> Result<&TruncatedPoly, ChartError> {
        Ok(&self.components[self.chart.index(name)?])
    }

    /// `law(left, right)` for polynomial arguments on a common chart.
    pub fn compose_polys(
        &self,
        left: &[TruncatedPoly],
        right: &[TruncatedPoly],
    ) -> Result<Vec<TruncatedPoly>, ChartError> {
        let images: Vec<TruncatedPoly> = left.iter().chain(right).cloned().collect();
        self.components.iter().map(|c| c.compose(&images)).collect()
    }

    /// Exact evaluation of the truncated series at a pair of points.
    pub fn apply(&self, gp: &[Rational], g: &[Rational]) -> Vec<Rational> {
        let point: Vec<Rational> = gp.iter().chain(g).cloned().collect();
        self.components.iter().map(|c| c.eval(&point)).collect()
    }

    pub fn apply_f64(&self, gp: &[f64], g: &[f64]) -> Vec<f64> {
        let point: Vec<f64> = gp.iter().chain(g).copied().collect();
        self.components.iter().map(|c| c.eval_f64(&point)).collect()
    }

    /// Restriction to the slice where the named coordinates vanish (in both
    /// arguments); their components are dropped.
    pub fn freeze(&self, names: &[&str]) -> Result<GroupLaw, ChartError> {
        let drop: Vec<usize> = names
            .iter()
            .map(|n| self.chart.index(n))
            .collect::<Result<_, _>>()?;
        let chart = self.chart.restrict(|i| !drop.contains(&i));
        let pair = chart.doubled();
        let n = self.chart.len();
        let mut components = Vec::new();
        for (i, c) in self.components.iter().enumerate() {
            if drop.contains(&i) {
                continue;
            }
            let mut c = c.clone();
            for &d in &drop {
                c = c.at_zero(d).at_zero(d + n);
            }
            components.push(c.embed(&pair)?);
        }
        Ok(GroupLaw {
            name: self.name.clone(),
            chart,
            pair,
            components,
            order: self.order,
        })
    }

    /// Same law expressed on a chart with the same names in another order.
    pub fn reorder(&self, chart: &Arc<Chart>) -> Result<GroupLaw, ChartError> {
        let pair = chart.doubled();
        let mut components = Vec::new();
        for name in chart.names() {
            components.push(self.component(name)?.embed(&pair)?);
        }
        Ok(GroupLaw {
            name: self.name.clone(),
            chart: chart.clone(),
            pair,
            components,
            order: self.order,
        })
    }

    /// Coefficient of `g′^a g^b` in component `k`.
    pub fn bilinear(&self, a: usize, b: usize, k: usize) -> Rational {
        let mut m = vec![0u8; self.pair.len()];
        m[a] += 1;
        m[b + self.chart.len()] += 1;
        self.components[k].coeff(&m)
    }

    /// Structure constants read off the law: `C_ab^k = B_ab^k − B_ba^k`
    /// where `B` is the bilinear part.
    pub fn commutator_constants(&self, a: usize, b: usize) -> Vec<Rational> {
        (0..self.chart.len())
            .map(|k| self.bilinear(a, b, k) - self.bilinear(b, a, k))
            .collect()
    }

    /// Componentwise difference, on the chart of `self`.
    pub fn difference(&self, other: &GroupLaw) -> Result<Vec<TruncatedPoly>, ChartError> {
        let other = other.reorder(&self.chart)?;
        Ok(self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a - b)
            .collect())
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "# group law {} truncated at total degree {}\n# chart {}\n",
            self.name, self.order, self.chart
        );
        for (i, c) in self.components.iter().enumerate() {
            s.push_str(&format!("{}'' = {}\n", self.chart.name(i), c.to_text()));
        }
        s
    }
}

impl fmt::Display for GroupLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn identity_map(chart: &Arc<Chart>, degree: u32) -> Vec<TruncatedPoly> {
    (0..chart.len())
        .map(|i| TruncatedPoly::coordinate(chart, degree, i))
        .collect()
}

/// Compositional inverse of a map `z ↦ z + O(z²)` on one chart.
fn invert_near_identity(f: &[TruncatedPoly], order: u32) -> Result<Vec<TruncatedPoly>, ChartError> {
    let chart = f[0].chart().clone();
    let id = identity_map(&chart, order);
    let mut g = id.clone();
    for _ in 0..order {
        let fg: Vec<TruncatedPoly> = f.iter().map(|c| c.compose(&g)).collect::<Result<_, _>>()?;
        g = id
            .iter()
            .zip(&fg)
            .zip(&g)
            .map(|((y, fg), g)| y - &(fg - g))
            .collect();
    }
    Ok(g)
}

/// Truncated group law of `alg` in the coordinates defined by `ordering`.
///
/// With `F(z) = log(Π_B exp(Σ_{i∈B} z_i X_i))`, the law is
/// `F⁻¹(BCH(F(z′), F(z)))`, computed exactly through total degree `order`.
pub fn exponentiate(
    alg: &AlgebraSpec,
    order: u32,
    ordering: &BlockOrdering,
) -> Result<GroupLaw, LawError> {
    if order == 0 || order > bch::MAX_ORDER {
        return Err(LawError::Order {
            got: order,
            max: bch::MAX_ORDER,
        });
    }
    alg.require_lie()?;
    ordering.validate(alg.dim())?;
    let chart = chart_for(alg);
    let n = alg.dim();
    let coords = identity_map(&chart, order);
    let block = |b: &Vec<usize>| {
        let mut e = bch::zero_element(&chart, order, n);
        for &i in b {
            e[i] = coords[i].clone();
        }
        e
    };
    let mut f = block(&ordering.blocks[0]);
    for b in &ordering.blocks[1..] {
        f = bch::bch(alg, &f, &block(b), order);
    }
    let g = invert_near_identity(&f, order)?;
    let pair = chart.doubled();
    let primed: Vec<TruncatedPoly> = (0..n)
        .map(|i| TruncatedPoly::coordinate(&pair, order, i))
        .collect();
    let plain: Vec<TruncatedPoly> = (0..n)
        .map(|i| TruncatedPoly::coordinate(&pair, order, i + n))
        .collect();
    let fp: Vec<TruncatedPoly> = f.iter().map(|c| c.compose(&primed)).collect::<Result<_, _>>()?;
    let fu: Vec<TruncatedPoly> = f.iter().map(|c| c.compose(&plain)).collect::<Result<_, _>>()?;
    let w = bch::bch(alg, &fp, &fu, order);
    let components = g.iter().map(|c| c.compose(&w)).collect::<Result<_, _>>()?;
    Ok(GroupLaw {
        name: alg.name.clone(),
        chart,
        pair,
        components,
        order,
    })
}

/// [`exponentiate`] with [`BlockOrdering::canonical`].
pub fn exponentiate_canonical(alg: &AlgebraSpec, order: u32) -> Result<GroupLaw, LawError> {
    exponentiate(alg, order, &BlockOrdering::canonical(alg))
}

/// Inverse element `g⁻¹` as a series in `g`, from `law(g, g⁻¹) = 0`.
pub fn inverse(law: &GroupLaw) -> Result<Vec<TruncatedPoly>, ChartError> {
    let order = law.order;
    let g = identity_map(&law.chart, order);
    let mut h: Vec<TruncatedPoly> = g.iter().map(|c| -c).collect();
    for _ in 0..order {
        let lg = law.compose_polys(&g, &h)?;
        h = lg
            .iter()
            .zip(&g)
            .zip(&h)
            .map(|((l, g), h)| &(h - l) + &TruncatedPoly::zero(g.chart(), order))
            .collect();
    }
    Ok(h)
}

/// Outcome of [`check_group_axioms`].
#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub order: u32,
    pub left_identity: bool,
    pub right_identity: bool,
    pub inverse: bool,
    /// Nonzero components of `law(law(a,b),c) − law(a,law(b,c))`.
    pub associativity: Vec<(String, TruncatedPoly)>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.left_identity && self.right_identity && self.inverse && self.associativity.is_empty()
    }

    /// Lowest total degree at which associativity fails.
    pub fn lowest_failing_degree(&self) -> Option<u32> {
        self.associativity
            .iter()
            .filter_map(|(_, p)| p.min_degree())
            .min()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "truncation degree: {}", self.order)?;
        writeln!(f, "left identity:  {}", self.left_identity)?;
        writeln!(f, "right identity: {}", self.right_identity)?;
        writeln!(f, "inverse:        {}", self.inverse)?;
        match self.lowest_failing_degree() {
            None => writeln!(f, "associativity:  true"),
            Some(d) => {
                writeln!(f, "associativity:  false (first failure at degree {d})")?;
                for (name, p) in &self.associativity {
                    writeln!(f, "  {name}: {}", p.homogeneous(d))?;
                }
                Ok(())
            }
        }
    }
}

/// Identity, inverse and associativity of a truncated law, checked
/// symbolically through its truncation degree.
pub fn check_group_axioms(law: &GroupLaw) -> Result<AxiomReport, ChartError> {
    let order = law.order;
    let chart = &law.chart;
    let n = chart.len();
    let id = identity_map(chart, order);
    let zero = vec![TruncatedPoly::zero(chart, order); n];
    let left_identity = law.compose_polys(&zero, &id)? == id;
    let right_identity = law.compose_polys(&id, &zero)? == id;

    let inv = inverse(law)?;
    let inverse_ok = law.compose_polys(&id, &inv)?.iter().all(TruncatedPoly::is_zero)
        && law.compose_polys(&inv, &id)?.iter().all(TruncatedPoly::is_zero);

    let triple = chart.tripled();
    let a: Vec<TruncatedPoly> = (0..n).map(|i| TruncatedPoly::coordinate(&triple, order, i)).collect();
    let b: Vec<TruncatedPoly> = (0..n)
        .map(|i| TruncatedPoly::coordinate(&triple, order, i + n))
        .collect();
    let c: Vec<TruncatedPoly> = (0..n)
        .map(|i| TruncatedPoly::coordinate(&triple, order, i + 2 * n))
        .collect();
    let ab = law.compose_polys(&a, &b)?;
    let bc = law.compose_polys(&b, &c)?;
    let lhs = law.compose_polys(&ab, &c)?;
    let rhs = law.compose_polys(&a, &bc)?;
    let associativity = lhs
        .iter()
        .zip(&rhs)
        .enumerate()
        .filter_map(|(i, (l, r))| {
            let d = l - r;
            (!d.is_zero()).then(|| (chart.name(i).to_string(), d))
        })
        .collect();
    Ok(AxiomReport {
        order,
        left_identity,
        right_identity,
        inverse: inverse_ok,
        associativity,
    })
}

/// Structure constants recovered from a law, in the same basis order.
pub fn algebra_from_law(law: &GroupLaw, labels: &[String]) -> AlgebraSpec {
    let n = law.chart.len();
    let mut alg = AlgebraSpec::new(&law.name, labels.to_vec(), Default::default());
    for a in 0..n {
        for b in a + 1..n {
            let mut e = LieElement::zero();
            for (k, c) in law.commutator_constants(a, b).into_iter().enumerate() {
                if !c.is_zero() {
                    e.add_term(k, c);
                }
            }
            alg.set_bracket(a, b, e);
        }
    }
    alg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{abelian, catalog, galilei_extended};
    use crate::constants::Constants;
    use crate::poly::{int, rat};

    fn heisenberg() -> AlgebraSpec {
        let labels = ["X", "Y", CENTRAL].iter().map(|s| s.to_string()).collect();
        let mut alg = AlgebraSpec::new("heis", labels, Constants::default());
        alg.set_bracket(0, 1, LieElement::term(2, int(1)));
        alg
    }

    #[test]
    fn heisenberg_first_kind() {
        let alg = heisenberg();
        let law = exponentiate(&alg, 4, &BlockOrdering::first_kind(&alg)).unwrap();
        assert_eq!(law.component("phi").unwrap().to_text(), "phi + phi' - 1/2*Y'*X + 1/2*X'*Y");
        assert!(check_group_axioms(&law).unwrap().ok());
    }

    #[test]
    fn heisenberg_second_kind() {
        let alg = heisenberg();
        let law = exponentiate(&alg, 3, &BlockOrdering::second_kind(&alg)).unwrap();
        // exp(xX)exp(yY): moving exp(y'Y) past exp(xX) costs exp(-x y' Xi)
        assert_eq!(law.component("phi").unwrap().to_text(), "phi + phi' - Y'*X");
    }

    #[test]
    fn commutators_are_recovered() {
        let k = Constants::default().with("m", rat(3, 2));
        let alg = galilei_extended(&k);
        for ordering in [BlockOrdering::first_kind(&alg), BlockOrdering::second_kind(&alg)] {
            let law = exponentiate(&alg, 2, &ordering).unwrap();
            let back = algebra_from_law(&law, alg.labels());
            for i in 0..alg.dim() {
                for j in 0..alg.dim() {
                    assert_eq!(back.structure(i, j), alg.structure(i, j), "{i} {j}");
                }
            }
        }
    }

    #[test]
    fn abelian_law_is_additive() {
        let alg = abelian(3, &Constants::default());
        let law = exponentiate(&alg, 5, &BlockOrdering::second_kind(&alg)).unwrap();
        for (i, c) in law.components().iter().enumerate() {
            let n = alg.dim();
            let pair = law.pair_chart();
            assert_eq!(
                *c,
                &TruncatedPoly::coordinate(pair, 5, i) + &TruncatedPoly::coordinate(pair, 5, i + n)
            );
        }
    }

    #[test]
    fn bad_inputs() {
        let alg = heisenberg();
        assert!(matches!(
            exponentiate(&alg, 0, &BlockOrdering::first_kind(&alg)),
            Err(LawError::Order { .. })
        ));
        let bad = BlockOrdering {
            blocks: vec![vec![0], vec![0, 1]],
        };
        assert!(matches!(exponentiate(&alg, 2, &bad), Err(LawError::Ordering(_))));
        let mut broken = alg.clone();
        broken.set_bracket(0, 2, LieElement::basis(0));
        assert!(matches!(
            exponentiate(&broken, 2, &BlockOrdering::first_kind(&broken)),
            Err(LawError::Algebra(_))
        ));
    }

    #[test]
    fn corrupted_coefficient_breaks_associativity() {
        let alg = catalog("GE", &Constants::default()).unwrap();
        let sub = subalgebra(&alg, &["t", "x1", "v1", "A1", "A0", "Xi"]).unwrap();
        let law = exponentiate(&sub, 3, &BlockOrdering::second_kind(&sub)).unwrap();
        assert!(check_group_axioms(&law).unwrap().ok());
        let k = law.chart().index("phi").unwrap();
        let pair = law.pair_chart().clone();
        let bump = &TruncatedPoly::var(&pair, 3, "t'").unwrap()
            * &(&TruncatedPoly::var(&pair, 3, "x1").unwrap() * &TruncatedPoly::var(&pair, 3, "v1").unwrap());
        let mut comps = law.components().to_vec();
        comps[k] = &comps[k] + &bump;
        let bad = GroupLaw::new("bumped", law.chart().clone(), comps);
        let report = check_group_axioms(&bad).unwrap();
        assert_eq!(report.lowest_failing_degree(), Some(3));
    }

    #[test]
    fn subalgebra_closure() {
        let alg = catalog("GE", &Constants::default()).unwrap();
        assert!(subalgebra(&alg, &["t", "v1"]).is_err());
        assert!(subalgebra(&alg, &["t", "v1", "x1"]).is_err());
        assert!(subalgebra(&alg, &["t", "v1", "x1", "Xi"]).is_ok());
    }
}
