//! Cascade connections of two first-type automata, morphisms of cascade
//! triples, the wreath product `Γ₁ wr^{A₂} Γ₂` and the embedding of every
//! semigroup cascade into it.
//!
//! Product states `(a₁, a₂)` are encoded as `a₁·|A₂| + a₂`, product outputs
//! `(b₁, b₂)` as `b₁·|B₂| + b₂`. The steering map `α` always takes the second
//! component's state first: `α(a₂, x)`.

use serde::Serialize;

use crate::algebra::{generate_semigroup_with, Closure, FiniteSet, SemigroupTable, Table};
use crate::error::{check_index, check_size, Error, Result};
use crate::first_type::{PureAutomatonFirst, SemigroupAutomatonFirst};
use crate::par::{self, Execution};
use crate::verdict::Verdict;

/// Largest wreath order whose associativity is re-verified exhaustively.
const WREATH_VERIFY_LIMIT: usize = 512;

/// `(X, α, β)` with `α: A₂×X→X₁` and `β: X→X₂`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CascadeTriplePure {
    inputs: FiniteSet,
    alpha: Table,
    beta: Vec<usize>,
}

impl CascadeTriplePure {
    pub fn new(inputs: FiniteSet, alpha: Table, beta: Vec<usize>) -> Result<Self> {
        check_size("alpha columns", alpha.cols(), inputs.size())?;
        check_size("beta length", beta.len(), inputs.size())?;
        Ok(Self { inputs, alpha, beta })
    }

    pub fn from_rows(alpha: Vec<Vec<usize>>, x1: usize, beta: Vec<usize>) -> Result<Self> {
        let inputs = FiniteSet::new(beta.len())?;
        let alpha = Table::from_rows("alpha", alpha, beta.len(), x1)?;
        Self::new(inputs, alpha, beta)
    }

    pub fn inputs(&self) -> &FiniteSet {
        &self.inputs
    }
    pub fn alpha(&self) -> &Table {
        &self.alpha
    }
    pub fn beta(&self) -> &[usize] {
        &self.beta
    }

    /// Range checks against the two component automata.
    pub fn validate(&self, m1: &PureAutomatonFirst, m2: &PureAutomatonFirst) -> Result<()> {
        self.alpha
            .expect_shape("alpha", m2.states().size(), self.inputs.size(), m1.inputs().size())?;
        for (x, &b) in self.beta.iter().enumerate() {
            check_index(|| format!("beta[{x}]"), b, m2.inputs().size())?;
        }
        Ok(())
    }
}

/// Builds `(A₁×A₂, X, B₁×B₂)` with
/// `(a₁,a₂)∘x = (a₁∘α(a₂,x), a₂∘β(x))` and `(a₁,a₂)∗x = (a₁∗α(a₂,x), a₂∗β(x))`.
pub fn cascade_pure(m1: &PureAutomatonFirst, m2: &PureAutomatonFirst, t: &CascadeTriplePure) -> Result<PureAutomatonFirst> {
    t.validate(m1, m2)?;
    let n2 = m2.states().size();
    let o2 = m2.outputs().size();
    let states = m1.states().product(m2.states());
    let outputs = m1.outputs().product(m2.outputs());
    let nx = t.inputs.size();
    let next = Table::from_fn(states.size(), nx, states.size(), |s, x| {
        let (a1, a2) = (s / n2, s % n2);
        m1.next().get(a1, t.alpha.get(a2, x)) * n2 + m2.next().get(a2, t.beta[x])
    });
    let out = Table::from_fn(states.size(), nx, outputs.size(), |s, x| {
        let (a1, a2) = (s / n2, s % n2);
        m1.out().get(a1, t.alpha.get(a2, x)) * o2 + m2.out().get(a2, t.beta[x])
    });
    PureAutomatonFirst::new(states, t.inputs.clone(), outputs, next, out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "diagram", rename_all = "lowercase")]
pub enum MorphismViolation {
    /// `α(a₂, x) ≠ α′(a₂, μ(x))`
    Alpha { state: usize, input: usize, lhs: usize, rhs: usize },
    /// `β(x) ≠ β′(μ(x))`
    Beta { input: usize, lhs: usize, rhs: usize },
}

/// Checks that `mu: X → X′` makes both triangles commute.
pub fn check_triple_morphism(
    t: &CascadeTriplePure,
    t2: &CascadeTriplePure,
    mu: &[usize],
) -> Result<Verdict<MorphismViolation>> {
    check_size("morphism length", mu.len(), t.inputs.size())?;
    check_size("steering states", t.alpha.rows(), t2.alpha.rows())?;
    for (x, &y) in mu.iter().enumerate() {
        check_index(|| format!("mu[{x}]"), y, t2.inputs.size())?;
    }
    for x in 0..t.inputs.size() {
        for a2 in 0..t.alpha.rows() {
            let (lhs, rhs) = (t.alpha.get(a2, x), t2.alpha.get(a2, mu[x]));
            if lhs != rhs {
                return Ok(Verdict::Fail(MorphismViolation::Alpha {
                    state: a2,
                    input: x,
                    lhs,
                    rhs,
                }));
            }
        }
        let (lhs, rhs) = (t.beta[x], t2.beta[mu[x]]);
        if lhs != rhs {
            return Ok(Verdict::Fail(MorphismViolation::Beta { input: x, lhs, rhs }));
        }
    }
    Ok(Verdict::Pass)
}

/// The terminal pure triple: inputs are pairs `(f, x₂)` with `f: A₂ → X₁`,
/// encoded like [`WreathElement`]s, `α′(a₂,(f,x₂)) = f(a₂)`, `β′(f,x₂) = x₂`.
pub fn terminal_triple_pure(m1: &PureAutomatonFirst, m2: &PureAutomatonFirst, cap: usize) -> Result<CascadeTriplePure> {
    let shape = WreathShape::new(m1.inputs().size(), m2.states().size(), m2.inputs().size(), cap)?;
    let n = shape.order();
    let alpha = Table::from_fn(m2.states().size(), n, m1.inputs().size(), |a2, i| shape.decode(i).bar[a2]);
    let beta = (0..n).map(|i| shape.decode(i).gamma2).collect();
    CascadeTriplePure::new(FiniteSet::new(n)?, alpha, beta)
}

/// The unique morphism from `t` into [`terminal_triple_pure`].
pub fn canonical_map_pure(t: &CascadeTriplePure, m1: &PureAutomatonFirst, m2: &PureAutomatonFirst) -> Result<Vec<usize>> {
    t.validate(m1, m2)?;
    let shape = WreathShape::new(m1.inputs().size(), m2.states().size(), m2.inputs().size(), usize::MAX)?;
    Ok((0..t.inputs.size())
        .map(|x| {
            shape.encode(&WreathElement {
                bar: (0..t.alpha.rows()).map(|a2| t.alpha.get(a2, x)).collect(),
                gamma2: t.beta[x],
            })
        })
        .collect())
}

/// `(Γ, α, β)` with `β: Γ→Γ₂` a homomorphism and `α: A₂×Γ→Γ₁` a crossed homomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CascadeTripleSemigroup {
    gamma: SemigroupTable,
    alpha: Table,
    beta: Vec<usize>,
}

impl CascadeTripleSemigroup {
    /// Range checks only; the laws are checked by [`check_semigroup_triple`].
    pub fn new(gamma: SemigroupTable, alpha: Table, beta: Vec<usize>) -> Result<Self> {
        check_size("alpha columns", alpha.cols(), gamma.order())?;
        check_size("beta length", beta.len(), gamma.order())?;
        Ok(Self { gamma, alpha, beta })
    }

    pub fn gamma(&self) -> &SemigroupTable {
        &self.gamma
    }
    pub fn alpha(&self) -> &Table {
        &self.alpha
    }
    pub fn beta(&self) -> &[usize] {
        &self.beta
    }

    pub fn validate(&self, m1: &SemigroupAutomatonFirst, m2: &SemigroupAutomatonFirst) -> Result<()> {
        self.alpha
            .expect_shape("alpha", m2.states().size(), self.gamma.order(), m1.gamma().order())?;
        for (g, &b) in self.beta.iter().enumerate() {
            check_index(|| format!("beta[{g}]"), b, m2.gamma().order())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "kebab-case")]
pub enum TripleViolation {
    /// `β(γ₁γ₂) ≠ β(γ₁)β(γ₂)`
    BetaHomomorphism { g1: usize, g2: usize, lhs: usize, rhs: usize },
    /// `α(a₂,γ₁γ₂) ≠ α(a₂,γ₁)·α(a₂∘β(γ₁),γ₂)`
    CrossedHomomorphism {
        state: usize,
        g1: usize,
        g2: usize,
        lhs: usize,
        rhs: usize,
    },
}

pub fn check_semigroup_triple(
    t: &CascadeTripleSemigroup,
    m1: &SemigroupAutomatonFirst,
    m2: &SemigroupAutomatonFirst,
) -> Result<Verdict<TripleViolation>> {
    check_semigroup_triple_with(t, m1, m2, Execution::default())
}

pub fn check_semigroup_triple_with(
    t: &CascadeTripleSemigroup,
    m1: &SemigroupAutomatonFirst,
    m2: &SemigroupAutomatonFirst,
    exec: Execution,
) -> Result<Verdict<TripleViolation>> {
    t.validate(m1, m2)?;
    let n = t.gamma.order();
    if let Some((g1, g2)) = t.gamma.homomorphism_violation(&t.beta, m2.gamma()) {
        return Ok(Verdict::Fail(TripleViolation::BetaHomomorphism {
            g1,
            g2,
            lhs: t.beta[t.gamma.mul(g1, g2)],
            rhs: m2.gamma().mul(t.beta[g1], t.beta[g2]),
        }));
    }
    let g1_table = m1.gamma();
    let hit = par::find_first(exec, t.alpha.rows() * n, |ag| {
        let (a2, g1) = (ag / n, ag % n);
        let shifted = m2.next().get(a2, t.beta[g1]);
        (0..n).find_map(|g2| {
            let lhs = t.alpha.get(a2, t.gamma.mul(g1, g2));
            let rhs = g1_table.mul(t.alpha.get(a2, g1), t.alpha.get(shifted, g2));
            (lhs != rhs).then_some(TripleViolation::CrossedHomomorphism {
                state: a2,
                g1,
                g2,
                lhs,
                rhs,
            })
        })
    });
    Ok(hit.into())
}

/// Semigroup cascade `(A₁×A₂, Γ, B₁×B₂)` driven by a triple.
pub fn cascade_semigroup(
    m1: &SemigroupAutomatonFirst,
    m2: &SemigroupAutomatonFirst,
    t: &CascadeTripleSemigroup,
) -> Result<SemigroupAutomatonFirst> {
    t.validate(m1, m2)?;
    let n2 = m2.states().size();
    let o2 = m2.outputs().size();
    let states = m1.states().product(m2.states());
    let outputs = m1.outputs().product(m2.outputs());
    let ng = t.gamma.order();
    let next = Table::from_fn(states.size(), ng, states.size(), |s, g| {
        let (a1, a2) = (s / n2, s % n2);
        m1.next().get(a1, t.alpha.get(a2, g)) * n2 + m2.next().get(a2, t.beta[g])
    });
    let out = Table::from_fn(states.size(), ng, outputs.size(), |s, g| {
        let (a1, a2) = (s / n2, s % n2);
        m1.out().get(a1, t.alpha.get(a2, g)) * o2 + m2.out().get(a2, t.beta[g])
    });
    SemigroupAutomatonFirst::new(states, t.gamma.clone(), outputs, next, out)
}

/// An element `(γ̄₁, γ₂)` of `Γ₁^{A₂} × Γ₂`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WreathElement {
    pub bar: Vec<usize>,
    pub gamma2: usize,
}

/// Sizes of the factors; converts between elements and their indices.
///
/// Index of `(f, g)` is `code(f)·|Γ₂| + g`, where `code` reads `f(0), f(1), ..`
/// as base-`|Γ₁|` digits, most significant first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WreathShape {
    pub g1_order: usize,
    pub a2_size: usize,
    pub g2_order: usize,
    order: usize,
}

impl WreathShape {
    pub fn new(g1_order: usize, a2_size: usize, g2_order: usize, cap: usize) -> Result<Self> {
        let order = u32::try_from(a2_size)
            .ok()
            .and_then(|e| g1_order.checked_pow(e))
            .and_then(|p| p.checked_mul(g2_order))
            .filter(|&o| o <= cap)
            .ok_or(Error::CapExceeded { cap })?;
        Ok(Self {
            g1_order,
            a2_size,
            g2_order,
            order,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn encode(&self, e: &WreathElement) -> usize {
        let code = e.bar.iter().fold(0, |acc, &v| acc * self.g1_order + v);
        code * self.g2_order + e.gamma2
    }

    pub fn decode(&self, index: usize) -> WreathElement {
        let gamma2 = index % self.g2_order;
        let mut code = index / self.g2_order;
        let mut bar = vec![0; self.a2_size];
        for slot in bar.iter_mut().rev() {
            *slot = code % self.g1_order;
            code /= self.g1_order;
        }
        WreathElement { bar, gamma2 }
    }
}

/// The wreath product semigroup with its element encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WreathProduct {
    pub table: SemigroupTable,
    pub shape: WreathShape,
}

impl WreathProduct {
    pub fn element(&self, index: usize) -> WreathElement {
        self.shape.decode(index)
    }

    pub fn index_of(&self, e: &WreathElement) -> usize {
        self.shape.encode(e)
    }

    /// `α(a₂, (γ̄₁, γ₂)) = γ̄₁(a₂)`
    pub fn alpha(&self, a2: usize, index: usize) -> usize {
        self.element(index).bar[a2]
    }

    /// `β(γ̄₁, γ₂) = γ₂`
    pub fn beta(&self, index: usize) -> usize {
        index % self.shape.g2_order
    }
}

fn check_action(a2: usize, action: &Table, g2: &SemigroupTable) -> Result<()> {
    action.expect_shape("action", a2, g2.order(), a2)?;
    for a in 0..a2 {
        for x in 0..g2.order() {
            for y in 0..g2.order() {
                if action.get(a, g2.mul(x, y)) != action.get(action.get(a, x), y) {
                    return Err(Error::NotAnAction { state: a, g1: x, g2: y });
                }
            }
        }
    }
    Ok(())
}

/// `(γ̄₁, γ₂)(γ̄₁′, γ₂′) = (a ↦ γ̄₁(a)·γ̄₁′(a∘γ₂), γ₂γ₂′)`.
pub fn wreath_multiply(g1: &SemigroupTable, action: &Table, g2: &SemigroupTable, x: &WreathElement, y: &WreathElement) -> WreathElement {
    WreathElement {
        bar: x
            .bar
            .iter()
            .enumerate()
            .map(|(a, &f)| g1.mul(f, y.bar[action.get(a, x.gamma2)]))
            .collect(),
        gamma2: g2.mul(x.gamma2, y.gamma2),
    }
}

pub fn wreath_semigroup(
    g1: &SemigroupTable,
    a2: &FiniteSet,
    action: &Table,
    g2: &SemigroupTable,
    cap: usize,
) -> Result<WreathProduct> {
    wreath_semigroup_with(g1, a2, action, g2, cap, Execution::default())
}

/// The full function-space wreath product `Γ₁ wr^{A₂} Γ₂`, of order exactly
/// `|Γ₁|^{|A₂|}·|Γ₂|`.
pub fn wreath_semigroup_with(
    g1: &SemigroupTable,
    a2: &FiniteSet,
    action: &Table,
    g2: &SemigroupTable,
    cap: usize,
    exec: Execution,
) -> Result<WreathProduct> {
    check_action(a2.size(), action, g2)?;
    let shape = WreathShape::new(g1.order(), a2.size(), g2.order(), cap)?;
    let n = shape.order();
    let elements: Vec<WreathElement> = (0..n).map(|i| shape.decode(i)).collect();
    let rows = par::map_range(exec, n, |i| {
        (0..n)
            .map(|j| shape.encode(&wreath_multiply(g1, action, g2, &elements[i], &elements[j])))
            .collect::<Vec<_>>()
    });
    let table = SemigroupTable::from_trusted(n, rows.into_iter().flatten().collect(), Vec::new());
    if n <= WREATH_VERIFY_LIMIT {
        if let Some((x, y, z)) = table.find_non_associative(exec) {
            return Err(Error::NotAssociative { x, y, z });
        }
    }
    Ok(WreathProduct { table, shape })
}

/// Subsemigroup of the wreath product generated by `gens`, for when the full
/// function space is beyond the cap.
pub fn wreath_subsemigroup(
    g1: &SemigroupTable,
    a2: &FiniteSet,
    action: &Table,
    g2: &SemigroupTable,
    gens: &[WreathElement],
    cap: usize,
) -> Result<Closure<WreathElement>> {
    check_action(a2.size(), action, g2)?;
    for (k, e) in gens.iter().enumerate() {
        check_size(&format!("generator {k} length"), e.bar.len(), a2.size())?;
        for (a, &v) in e.bar.iter().enumerate() {
            check_index(|| format!("generator {k} bar[{a}]"), v, g1.order())?;
        }
        check_index(|| format!("generator {k} gamma2"), e.gamma2, g2.order())?;
    }
    generate_semigroup_with(gens, |x, y| wreath_multiply(g1, action, g2, x, y), cap, Execution::default())
}

/// The wreath-product automaton together with its defining triple.
#[derive(Debug, Clone)]
pub struct WreathAutomaton {
    pub automaton: SemigroupAutomatonFirst,
    pub triple: CascadeTripleSemigroup,
    pub product: WreathProduct,
}

pub fn wreath_automaton(m1: &SemigroupAutomatonFirst, m2: &SemigroupAutomatonFirst, cap: usize) -> Result<WreathAutomaton> {
    wreath_automaton_with(m1, m2, cap, Execution::default())
}

pub fn wreath_automaton_with(
    m1: &SemigroupAutomatonFirst,
    m2: &SemigroupAutomatonFirst,
    cap: usize,
    exec: Execution,
) -> Result<WreathAutomaton> {
    let product = wreath_semigroup_with(m1.gamma(), m2.states(), m2.next(), m2.gamma(), cap, exec)?;
    let n = product.table.order();
    let alpha = Table::from_fn(m2.states().size(), n, m1.gamma().order(), |a2, i| product.alpha(a2, i));
    let beta = (0..n).map(|i| product.beta(i)).collect();
    let triple = CascadeTripleSemigroup::new(product.table.clone(), alpha, beta)?;
    let automaton = cascade_semigroup(m1, m2, &triple)?;
    Ok(WreathAutomaton {
        automaton,
        triple,
        product,
    })
}

/// The canonical homomorphism `Γ → Γ₁ wr^{A₂} Γ₂` of a cascade triple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub map: Vec<usize>,
    pub wreath_order: usize,
    pub image_order: usize,
    pub injective: bool,
}

/// Builds `γ ↦ (a₂ ↦ α(a₂,γ), β(γ))` and verifies that it is a homomorphism,
/// that it commutes with both diagrams, and that no other element of the
/// wreath product satisfies the diagrams at any `γ`.
pub fn embed_into_wreath(
    t: &CascadeTripleSemigroup,
    m1: &SemigroupAutomatonFirst,
    m2: &SemigroupAutomatonFirst,
    w: &WreathProduct,
) -> Result<Embedding> {
    embed_into_wreath_with(t, m1, m2, w, Execution::default())
}

pub fn embed_into_wreath_with(
    t: &CascadeTripleSemigroup,
    m1: &SemigroupAutomatonFirst,
    m2: &SemigroupAutomatonFirst,
    w: &WreathProduct,
    exec: Execution,
) -> Result<Embedding> {
    if let Verdict::Fail(v) = check_semigroup_triple_with(t, m1, m2, exec)? {
        return Err(Error::Invalid(format!("cascade triple violates its laws: {v:?}")));
    }
    let expected = WreathShape::new(m1.gamma().order(), m2.states().size(), m2.gamma().order(), usize::MAX)?;
    if w.shape != expected {
        return Err(Error::Invalid("wreath product was built from different components".into()));
    }
    let a2 = m2.states().size();
    let n = t.gamma.order();
    let map: Vec<usize> = (0..n)
        .map(|g| {
            w.index_of(&WreathElement {
                bar: (0..a2).map(|a| t.alpha.get(a, g)).collect(),
                gamma2: t.beta[g],
            })
        })
        .collect();

    if let Some((x, y)) = t.gamma.homomorphism_violation(&map, &w.table) {
        return Err(Error::EmbeddingVerification(format!(
            "not a homomorphism at ({x}, {y})"
        )));
    }
    for g in 0..n {
        let img = map[g];
        if w.beta(img) != t.beta[g] {
            return Err(Error::EmbeddingVerification(format!("β diagram fails at {g}")));
        }
        if let Some(a) = (0..a2).find(|&a| w.alpha(a, img) != t.alpha.get(a, g)) {
            return Err(Error::EmbeddingVerification(format!("α diagram fails at ({a}, {g})")));
        }
    }
    // Pointwise forcing: scan the whole wreath product for diagram-satisfying images.
    let clash = par::find_first(exec, n, |g| {
        let count = (0..w.table.order())
            .filter(|&e| w.beta(e) == t.beta[g] && (0..a2).all(|a| w.alpha(a, e) == t.alpha.get(a, g)))
            .take(2)
            .collect::<Vec<_>>();
        (count != [map[g]]).then_some((g, count))
    });
    if let Some((g, found)) = clash {
        return Err(Error::EmbeddingVerification(format!(
            "diagram-satisfying images of {g} are {found:?}, expected exactly [{}]",
            map[g]
        )));
    }

    let mut image: Vec<usize> = map.clone();
    image.sort_unstable();
    image.dedup();
    Ok(Embedding {
        injective: image.len() == n,
        image_order: image.len(),
        wreath_order: w.table.order(),
        map,
    })
}
