//! Intersection forms, signatures, sphere detection, smooth classification,
//! classical almost-contact invariants, and recognition of named manifolds.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{bernoulli, gcd_u64, Rational};
use crate::error::{Error, Result};
use crate::exponents::{milnor_number, ExponentList};
use crate::milnor::det_mod8;

pub use crate::matrix::IntMatrix;

/// Largest Milnor number for which the dense intersection matrix is built.
pub const PHAM_LIMIT: u64 = 1500;

/// Pham's intersection form on the basis `e_{i_0...i_n}`, `0 ≤ i_k ≤ a_k - 2`.
///
/// With `ε = (-1)^{n(n+1)/2}`: the diagonal is `ε(1 + (-1)^n)`, and for
/// `j = i + e` with `e ∈ {0,1}^{n+1} \ {0}` the entry is `ε(-1)^{|e|}`; the
/// transposed entry differs by `(-1)^n`.
pub fn pham_matrix(a: &ExponentList) -> Result<IntMatrix> {
    let mu = milnor_number(a);
    let size = match mu.to_u64() {
        Some(m) if m <= PHAM_LIMIT => m as usize,
        _ => {
            return Err(Error::Domain(format!(
                "Milnor number {mu} of {a} exceeds the matrix limit {PHAM_LIMIT}"
            )))
        }
    };
    let n = a.n();
    let eps: i64 = if (n * (n + 1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    };
    let refl: i64 = if n.is_multiple_of(2) { 1 } else { -1 };
    let radix: Vec<usize> = a.exponents().iter().map(|&x| x as usize - 1).collect();
    let len = radix.len();

    let mut labels = Vec::with_capacity(size);
    let mut m = IntMatrix::zeros(size);
    if size == 0 {
        return Ok(m);
    }
    let mut digits = vec![0usize; len];
    for idx in 0..size {
        labels.push(digits.iter().map(|&d| d as u64).collect());
        m.set(idx, idx, BigInt::from(eps * (1 + refl)));
        for e in 1u32..1 << len {
            let mut target = 0usize;
            let mut ok = true;
            for k in 0..len {
                let dk = digits[k] + (e >> k & 1) as usize;
                if dk >= radix[k] {
                    ok = false;
                    break;
                }
                target = target * radix[k] + dk;
            }
            if !ok {
                continue;
            }
            let v = if e.count_ones() % 2 == 0 { eps } else { -eps };
            m.set(idx, target, BigInt::from(v));
            m.set(target, idx, BigInt::from(refl * v));
        }
        for k in (0..len).rev() {
            digits[k] += 1;
            if digits[k] < radix[k] {
                break;
            }
            digits[k] = 0;
        }
    }
    m.with_labels(labels)
}

/// Positive and negative index of a symmetric matrix.
///
/// Fraction-free symmetric elimination: the pivots are the leading principal
/// minors `D_k` of a congruent matrix, and the sign of `D_k / D_{k-1}` is the
/// sign of the k-th diagonal entry of an LDLᵀ factorization. When the
/// trailing diagonal vanishes, adding row and column j to row and column i
/// (an integral congruence) creates the nonzero diagonal entry `2 a_ij`.
pub fn inertia(m: &IntMatrix) -> Result<(usize, usize)> {
    if !m.is_symmetric() {
        return Err(Error::Domain("inertia needs a symmetric matrix".into()));
    }
    let n = m.size();
    let mut a: Vec<Vec<BigInt>> = m.rows().to_vec();
    let mut prev = BigInt::from(1);
    let (mut pos, mut neg) = (0, 0);
    for k in 0..n {
        let diagonal = (k..n)
            .filter(|&i| !a[i][i].is_zero())
            .min_by(|&i, &j| a[i][i].magnitude().cmp(a[j][j].magnitude()));
        let p = match diagonal {
            Some(p) => p,
            None => {
                let Some((i, j)) = (k..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_zero())
                else {
                    break;
                };
                for c in k..n {
                    let v = a[j][c].clone();
                    a[i][c] += v;
                }
                for row in a[k..].iter_mut() {
                    let v = row[j].clone();
                    row[i] += v;
                }
                i
            }
        };
        a.swap(p, k);
        for row in a.iter_mut() {
            row.swap(p, k);
        }
        let d = a[k][k].clone();
        if d.is_positive() == prev.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            for j in i..n {
                let v = (&a[i][j] * &d - &a[i][k] * &a[k][j]) / &prev;
                a[j][i] = v.clone();
                a[i][j] = v;
            }
        }
        prev = d;
    }
    Ok((pos, neg))
}

/// Signature of the intersection form of `V_ε(a)`; defined for even n.
pub fn signature(a: &ExponentList) -> Result<BigInt> {
    if a.n() % 2 == 1 {
        return Err(Error::Domain(format!(
            "signature undefined for skew forms ({a} has odd n = {})",
            a.n()
        )));
    }
    let (p, q) = inertia(&pham_matrix(a)?)?;
    Ok(BigInt::from(p) - BigInt::from(q))
}

/// Order of the cyclic group `bP_{4k}`:
/// `2^{2k-2} (2^{2k-1} - 1) · numerator(4 B_k / k)`.
pub fn bp_order(k: u32) -> Result<BigInt> {
    if k < 2 {
        return Err(Error::Domain(format!("bP_4k order needs k ≥ 2, got {k}")));
    }
    let q = bernoulli(k)? * Rational::from_integer(BigInt::from(4))
        / Rational::from_integer(BigInt::from(k));
    let two = BigInt::from(2);
    Ok(two.pow(2 * k - 2) * (two.pow(2 * k - 1) - 1) * q.numer())
}

/// Which clause of the graph criterion decided the topological type.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphReason {
    SmoothPoint,
    TwoIsolatedVertices,
    IsolatedVertexAndOddComponent,
    CriterionFails,
}

impl GraphReason {
    pub fn tag(&self) -> &'static str {
        match self {
            GraphReason::SmoothPoint => "smooth_point",
            GraphReason::TwoIsolatedVertices => "two_isolated_vertices",
            GraphReason::IsolatedVertexAndOddComponent => "isolated_vertex_and_odd_component",
            GraphReason::CriterionFails => "criterion_fails",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SmoothClass {
    Standard,
    Kervaire,
    /// `(|τ|/8) mod |bP_{4k}|`, with the sign of τ kept apart.
    BpClass {
        class: BigInt,
        signature_sign: i8,
    },
}

impl SmoothClass {
    pub fn tag(&self) -> &'static str {
        match self {
            SmoothClass::Standard => "standard",
            SmoothClass::Kervaire => "kervaire",
            SmoothClass::BpClass { .. } => "bp_class",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereVerdict {
    pub homeomorphic_sphere: bool,
    pub reason: GraphReason,
    pub smooth_class: Option<SmoothClass>,
    pub bp_order: Option<BigInt>,
    pub signature: Option<BigInt>,
    pub determinant: Option<(BigInt, u8)>,
}

impl SphereVerdict {
    fn topological(homeomorphic_sphere: bool, reason: GraphReason) -> Self {
        SphereVerdict {
            homeomorphic_sphere,
            reason,
            smooth_class: None,
            bp_order: None,
            signature: None,
            determinant: None,
        }
    }

    /// Diffeomorphic to the standard sphere; for bP classes this means class 0.
    pub fn is_standard(&self) -> bool {
        match &self.smooth_class {
            Some(SmoothClass::Standard) => true,
            Some(SmoothClass::BpClass { class, .. }) => class.is_zero(),
            _ => false,
        }
    }
}

/// Milnor–Brieskorn graph criterion (vertices `a_j`, edges where gcd > 1).
pub fn sphere_graph_test(a: &ExponentList) -> Result<SphereVerdict> {
    if a.has_smooth_point() {
        return Ok(SphereVerdict::topological(true, GraphReason::SmoothPoint));
    }
    if a.n() < 3 {
        return Err(Error::UnsupportedDimension(format!(
            "the graph criterion needs n ≥ 3, {a} has n = {}",
            a.n()
        )));
    }
    let e = a.exponents();
    let len = e.len();
    let mut component = vec![usize::MAX; len];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..len {
        if component[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut stack = vec![s];
        let mut members = Vec::new();
        component[s] = id;
        while let Some(v) = stack.pop() {
            members.push(v);
            for w in 0..len {
                if component[w] == usize::MAX && gcd_u64(e[v], e[w]) > 1 {
                    component[w] = id;
                    stack.push(w);
                }
            }
        }
        comps.push(members);
    }
    let isolated = comps.iter().filter(|c| c.len() == 1).count();
    if isolated >= 2 {
        return Ok(SphereVerdict::topological(
            true,
            GraphReason::TwoIsolatedVertices,
        ));
    }
    let odd_pairwise_two = comps.iter().any(|c| {
        c.len() > 1
            && c.len() % 2 == 1
            && c.iter()
                .all(|&i| c.iter().all(|&j| i == j || gcd_u64(e[i], e[j]) == 2))
    });
    if isolated == 1 && odd_pairwise_two {
        return Ok(SphereVerdict::topological(
            true,
            GraphReason::IsolatedVertexAndOddComponent,
        ));
    }
    Ok(SphereVerdict::topological(
        false,
        GraphReason::CriterionFails,
    ))
}

/// Smooth type of a Brieskorn homotopy sphere.
///
/// `n ∈ {1, 3, 7}` is standard; for odd n the residue of `|Δ(-1)|` mod 8
/// separates standard (±1) from Kervaire (±3); for even n the class is
/// `τ/8` in `bP_{2n}`.
pub fn classify_sphere(a: &ExponentList) -> Result<SphereVerdict> {
    let mut v = sphere_graph_test(a)?;
    if !v.homeomorphic_sphere {
        return Ok(v);
    }
    let n = a.n();
    if v.reason == GraphReason::SmoothPoint || matches!(n, 1 | 3 | 7) {
        v.smooth_class = Some(SmoothClass::Standard);
        return Ok(v);
    }
    if n % 2 == 1 {
        let (det, residue) = det_mod8(a)?;
        v.smooth_class = Some(match residue {
            1 | 7 => SmoothClass::Standard,
            _ => SmoothClass::Kervaire,
        });
        v.determinant = Some((det, residue));
        return Ok(v);
    }
    let k = (n / 2) as u32;
    let order = bp_order(k)?;
    let tau = signature(a)?;
    let (eighth, rem) = tau.abs().div_rem(&BigInt::from(8));
    if !rem.is_zero() {
        return Err(Error::Consistency(format!(
            "signature {tau} of the homotopy sphere {a} is not divisible by 8"
        )));
    }
    let sign = if tau.is_negative() { -1 } else { 1 };
    v.smooth_class = Some(SmoothClass::BpClass {
        class: eighth.mod_floor(&order),
        signature_sign: sign,
    });
    v.bp_order = Some(order);
    v.signature = Some(tau);
    Ok(v)
}

/// `π_{2n-1}(SO(2n)/U(n))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MasseyGroup {
    IntegersPlusZ2,
    Cyclic(BigInt),
    Integers,
}

impl fmt::Display for MasseyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MasseyGroup::IntegersPlusZ2 => write!(f, "Z + Z_2"),
            MasseyGroup::Cyclic(o) => write!(f, "Z_{o}"),
            MasseyGroup::Integers => write!(f, "Z"),
        }
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

pub fn massey_group(n: usize) -> Result<MasseyGroup> {
    if n < 2 {
        return Err(Error::Domain(format!("Massey group needs n ≥ 2, got {n}")));
    }
    Ok(match n % 4 {
        0 => MasseyGroup::IntegersPlusZ2,
        1 => MasseyGroup::Cyclic(factorial(n - 1)),
        2 => MasseyGroup::Integers,
        _ => MasseyGroup::Cyclic(factorial(n - 1) / 2),
    })
}

/// Value of the almost contact class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostContactClass {
    pub n: usize,
    pub group: MasseyGroup,
    /// Integer component (reduced mod the order for cyclic groups); for
    /// `Z ⊕ Z_2` the second component is always 0.
    pub value: Rational,
    /// Whether Morita's formula applies: the link is a standard sphere.
    pub in_scope: bool,
    pub homeomorphic_sphere: bool,
}

/// Morita's formula for the almost contact class of a Brieskorn sphere.
///
/// Outside its scope (exotic or non-sphere links) the literal value is still
/// returned, flagged, and left unreduced if it is not an integer.
pub fn almost_contact_class(a: &ExponentList) -> Result<AlmostContactClass> {
    let n = a.n();
    let group = massey_group(n)?;
    let verdict = classify_sphere(a)?;
    let in_scope = verdict.homeomorphic_sphere && verdict.is_standard();
    let half_mu = Rational::new(milnor_number(a), BigInt::from(2));
    let value = match n % 4 {
        1 | 3 => half_mu,
        r => {
            let b = bernoulli((n / 2) as u32)?;
            let denom = Rational::from_integer(
                BigInt::from(4)
                    * BigInt::from(2).pow(n as u32)
                    * (BigInt::from(2).pow(n as u32 - 1) - 1),
            ) * b;
            let c = Rational::from_integer(factorial(n)) / denom;
            let sig = Rational::from_integer(signature(a)?);
            if r == 0 {
                c * sig - half_mu
            } else {
                -(c * sig) - half_mu
            }
        }
    };
    if !value.is_integer() {
        if in_scope {
            return Err(Error::Consistency(format!(
                "almost contact class of the standard sphere {a} is not integral: {value}"
            )));
        }
        return Ok(AlmostContactClass {
            n,
            group,
            value,
            in_scope,
            homeomorphic_sphere: verdict.homeomorphic_sphere,
        });
    }
    let value = match &group {
        MasseyGroup::Cyclic(order) => Rational::from_integer(value.to_integer().mod_floor(order)),
        _ => value,
    };
    Ok(AlmostContactClass {
        n,
        group,
        value,
        in_scope,
        homeomorphic_sphere: verdict.homeomorphic_sphere,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecognitionTag {
    StandardSphere,
    /// `ST*S^n`.
    UnitCotangent {
        n: usize,
    },
    TorusLink {
        components: u64,
    },
    /// `L(k, k-1)`.
    LensSpace {
        k: u64,
    },
    /// `Σ(3,2,...,2)` in dimension `4k+1`.
    KervairePattern {
        dim: usize,
    },
    /// Contact open book with page `T*S^{m}` and monodromy `τ^N`.
    OpenBook {
        page_dim: usize,
        twists: u64,
    },
}

impl fmt::Display for RecognitionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecognitionTag::StandardSphere => write!(f, "standard sphere"),
            RecognitionTag::UnitCotangent { n } => write!(f, "ST*S^{n}"),
            RecognitionTag::TorusLink { components: 1 } => write!(f, "torus knot"),
            RecognitionTag::TorusLink { components } => {
                write!(f, "torus link with {components} components")
            }
            RecognitionTag::LensSpace { k } => write!(f, "lens space L({k},{})", k - 1),
            RecognitionTag::KervairePattern { dim } => {
                write!(f, "Kervaire sphere pattern (dim {dim})")
            }
            RecognitionTag::OpenBook { page_dim, twists } => {
                write!(f, "OB(T*S^{page_dim}, tau^{twists})")
            }
        }
    }
}

impl RecognitionTag {
    pub fn key(&self) -> &'static str {
        match self {
            RecognitionTag::StandardSphere => "standard_sphere",
            RecognitionTag::UnitCotangent { .. } => "unit_cotangent",
            RecognitionTag::TorusLink { .. } => "torus_link",
            RecognitionTag::LensSpace { .. } => "lens_space",
            RecognitionTag::KervairePattern { .. } => "kervaire_pattern",
            RecognitionTag::OpenBook { .. } => "open_book",
        }
    }
}

/// Named manifolds recognizable from the exponent pattern alone.
pub fn recognize(a: &ExponentList) -> Vec<RecognitionTag> {
    let e = a.exponents();
    let n = a.n();
    let mut tags = Vec::new();
    if a.has_smooth_point() {
        tags.push(RecognitionTag::StandardSphere);
    }
    let twos = e.iter().filter(|&&x| x == 2).count();
    let odd_one_out = || e.iter().copied().find(|&x| x != 2);
    if twos == e.len() {
        tags.push(RecognitionTag::UnitCotangent { n });
    }
    if e.len() == 2 {
        tags.push(RecognitionTag::TorusLink {
            components: gcd_u64(e[0], e[1]),
        });
    }
    if e.len() == 3 && twos >= 2 {
        tags.push(RecognitionTag::LensSpace {
            k: odd_one_out().unwrap_or(2),
        });
    }
    let dim = a.link_dimension();
    if dim % 4 == 1 && twos == e.len() - 1 && odd_one_out() == Some(3) {
        tags.push(RecognitionTag::KervairePattern { dim });
    }
    if e.len() >= 4 && twos >= e.len() - 1 {
        tags.push(RecognitionTag::OpenBook {
            page_dim: n - 1,
            twists: odd_one_out().unwrap_or(2),
        });
    }
    tags
}
