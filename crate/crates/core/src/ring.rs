//! Dimension-graded exact arithmetic in the Chow rings of P^n and Gr(k,n).
//!
//! Classes are written in the homological basis: powers h^c (dimension n-c)
//! for projective space, Schubert classes B_λ = [X(λ)] (dimension |λ|) for a
//! Grassmannian. Basis order is dimension-ascending, reverse-lexicographic
//! within a grade; position 0 is always the point class and the last position
//! the fundamental class (the ring unit).

use crate::lr::lr_coefficient;
use crate::partition::{partitions_in_rectangle, Partition, Rectangle};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ModelKind {
    Projective { n: u32 },
    Grassmannian { k: u32, n: u32 },
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum BasisElement {
    /// h^c in P^n, of dimension n-c.
    Power(u32),
    /// [X(λ)] in Gr(k,n), of dimension |λ|.
    Schubert(Partition),
}

pub struct RingModel {
    kind: ModelKind,
    basis: Vec<BasisElement>,
    dims: Vec<u32>,
    by_dim: Vec<Vec<usize>>,
    schubert_pos: HashMap<Partition, usize>,
    dim_x: u32,
}

impl RingModel {
    pub fn projective(n: u32) -> Arc<RingModel> {
        let basis: Vec<BasisElement> = (0..=n).map(|d| BasisElement::Power(n - d)).collect();
        let dims: Vec<u32> = (0..=n).collect();
        let by_dim = (0..=n).map(|d| vec![d as usize]).collect();
        Arc::new(RingModel {
            kind: ModelKind::Projective { n },
            basis,
            dims,
            by_dim,
            schubert_pos: HashMap::new(),
            dim_x: n,
        })
    }

    pub fn grassmannian(k: u32, n: u32) -> Arc<RingModel> {
        assert!(k >= 1 && k < n, "need 1 <= k < n, got k={k} n={n}");
        let rect = Rectangle { rows: k, cols: n - k };
        let parts = partitions_in_rectangle(rect);
        let dim_x = k * (n - k);
        let mut by_dim = vec![Vec::new(); dim_x as usize + 1];
        let mut schubert_pos = HashMap::new();
        let mut dims = Vec::new();
        let mut basis = Vec::new();
        for (i, p) in parts.into_iter().enumerate() {
            dims.push(p.weight());
            by_dim[p.weight() as usize].push(i);
            schubert_pos.insert(p.clone(), i);
            basis.push(BasisElement::Schubert(p));
        }
        Arc::new(RingModel {
            kind: ModelKind::Grassmannian { k, n },
            basis,
            dims,
            by_dim,
            schubert_pos,
            dim_x,
        })
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn basis_len(&self) -> usize {
        self.basis.len()
    }

    pub fn dim_of(&self, pos: usize) -> u32 {
        self.dims[pos]
    }

    /// Dimension of the ambient variety.
    pub fn dim_x(&self) -> u32 {
        self.dim_x
    }

    pub fn rectangle(&self) -> Option<Rectangle> {
        match self.kind {
            ModelKind::Grassmannian { k, n } => Some(Rectangle { rows: k, cols: n - k }),
            ModelKind::Projective { .. } => None,
        }
    }

    pub fn position(&self, e: &BasisElement) -> Option<usize> {
        match (e, self.kind) {
            (BasisElement::Power(c), ModelKind::Projective { n }) if *c <= n => {
                Some((n - c) as usize)
            }
            (BasisElement::Schubert(p), ModelKind::Grassmannian { .. }) => {
                self.schubert_pos.get(p).copied()
            }
            _ => None,
        }
    }

    /// Human-readable label of a basis position: `h^2` or `(3,1)`.
    pub fn label(&self, pos: usize) -> String {
        match &self.basis[pos] {
            BasisElement::Power(c) => format!("h^{c}"),
            BasisElement::Schubert(p) => p.to_string(),
        }
    }

    /// Positions of all basis elements of homological dimension `d`.
    pub fn positions_of_dim(&self, d: u32) -> &[usize] {
        &self.by_dim[d as usize]
    }
}

impl fmt::Debug for RingModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingModel({:?})", self.kind)
    }
}

/// Element of the Chow group with arbitrary-precision integer coefficients.
#[derive(Clone)]
pub struct GradedClass {
    model: Arc<RingModel>,
    coeffs: BTreeMap<usize, BigInt>,
}

impl GradedClass {
    pub fn zero(model: &Arc<RingModel>) -> Self {
        GradedClass { model: model.clone(), coeffs: BTreeMap::new() }
    }

    /// The ring unit: the fundamental class [X].
    pub fn unit(model: &Arc<RingModel>) -> Self {
        let mut c = Self::zero(model);
        c.set(model.basis_len() - 1, BigInt::one());
        c
    }

    /// The point class.
    pub fn point(model: &Arc<RingModel>) -> Self {
        let mut c = Self::zero(model);
        c.set(0, BigInt::one());
        c
    }

    pub fn from_terms<I, B>(model: &Arc<RingModel>, terms: I) -> Self
    where
        I: IntoIterator<Item = (BasisElement, B)>,
        B: Into<BigInt>,
    {
        let mut c = Self::zero(model);
        for (e, v) in terms {
            let pos = model
                .position(&e)
                .unwrap_or_else(|| panic!("{e:?} is not a basis element of {:?}", model.kind));
            c.add_at(pos, v.into());
        }
        c
    }

    /// Schubert class [X(λ)].
    pub fn schubert(model: &Arc<RingModel>, lam: &Partition) -> Self {
        Self::from_terms(model, [(BasisElement::Schubert(lam.clone()), BigInt::one())])
    }

    /// Codimension-indexed Schubert class σ_λ = [X(λ^∨)].
    pub fn sigma(model: &Arc<RingModel>, lam: &Partition) -> Self {
        let rect = model.rectangle().expect("sigma classes need a Grassmannian model");
        Self::schubert(model, &lam.dual_in_rectangle(rect))
    }

    pub fn model(&self) -> &Arc<RingModel> {
        &self.model
    }

    pub fn coeff(&self, pos: usize) -> BigInt {
        self.coeffs.get(&pos).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn set(&mut self, pos: usize, v: BigInt) {
        assert!(pos < self.model.basis_len());
        if v.is_zero() {
            self.coeffs.remove(&pos);
        } else {
            self.coeffs.insert(pos, v);
        }
    }

    pub fn add_at(&mut self, pos: usize, v: BigInt) {
        let cur = self.coeff(pos);
        self.set(pos, cur + v);
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms in canonical basis order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().map(|(&p, v)| (p, v))
    }

    /// Dense coefficient vector in canonical basis order.
    pub fn to_dense(&self) -> Vec<BigInt> {
        (0..self.model.basis_len()).map(|p| self.coeff(p)).collect()
    }

    pub fn from_dense(model: &Arc<RingModel>, v: &[BigInt]) -> Self {
        assert_eq!(v.len(), model.basis_len(), "coefficient vector length mismatch");
        let mut c = Self::zero(model);
        for (pos, val) in v.iter().enumerate() {
            c.set(pos, val.clone());
        }
        c
    }

    fn assert_same_model(&self, rhs: &Self) {
        assert_eq!(self.model.kind, rhs.model.kind, "model mismatch");
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.assert_same_model(rhs);
        let mut out = self.clone();
        for (p, v) in rhs.terms() {
            out.add_at(p, v.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for v in out.coeffs.values_mut() {
            *v = -v.clone();
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        let mut out = Self::zero(&self.model);
        for (p, v) in self.terms() {
            out.set(p, v * s);
        }
        out
    }

    /// Intersection product. Projective: truncated polynomial multiplication.
    /// Grassmannian: B_λ·B_μ = Σ_ρ c(ρ^∨; λ^∨, μ^∨) B_ρ over ρ in the rectangle.
    pub fn multiply(&self, rhs: &Self) -> Self {
        self.assert_same_model(rhs);
        let model = &self.model;
        let mut out = Self::zero(model);
        match model.kind {
            ModelKind::Projective { n } => {
                for (p, a) in self.terms() {
                    for (q, b) in rhs.terms() {
                        let d = p + q;
                        if d >= n as usize {
                            out.add_at(d - n as usize, a * b);
                        }
                    }
                }
            }
            ModelKind::Grassmannian { .. } => {
                let rect = model.rectangle().unwrap();
                let dim_x = model.dim_x();
                for (p, a) in self.terms() {
                    for (q, b) in rhs.terms() {
                        let d = model.dim_of(p) + model.dim_of(q);
                        if d < dim_x {
                            continue;
                        }
                        let lam_d = partition_at(model, p).dual_in_rectangle(rect);
                        let mu_d = partition_at(model, q).dual_in_rectangle(rect);
                        for &r in model.positions_of_dim(d - dim_x) {
                            let rho_d = partition_at(model, r).dual_in_rectangle(rect);
                            let c = lr_coefficient(&lam_d, &mu_d, &rho_d);
                            if c != 0 {
                                out.add_at(r, a * b * BigInt::from(c));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Negates every odd-dimensional homogeneous component.
    pub fn check_signs(&self) -> Self {
        let mut out = Self::zero(&self.model);
        for (p, v) in self.terms() {
            let v = if self.model.dim_of(p) % 2 == 1 { -v.clone() } else { v.clone() };
            out.set(p, v);
        }
        out
    }

    /// Inverse of a unit `±[X] + lower terms`, by truncated geometric series.
    /// Panics unless the fundamental-class coefficient is ±1.
    pub fn invert_unit(&self) -> Self {
        let model = &self.model;
        let top = self.coeff(model.basis_len() - 1);
        assert!(
            top.clone().abs().is_one(),
            "invert_unit needs fundamental-class coefficient ±1, got {top}"
        );
        let unit = Self::unit(model);
        // self = s(1 + a) with a of strictly positive codimension
        let a = self.scale(&top).sub(&unit);
        let mut inv = unit.clone();
        let mut pow = unit;
        for _ in 0..model.dim_x() {
            pow = pow.multiply(&a).neg();
            if pow.is_zero() {
                break;
            }
            inv = inv.add(&pow);
        }
        inv.scale(&top)
    }

    /// All coefficients nonnegative with at least one positive.
    pub fn is_effective(&self) -> bool {
        !self.coeffs.is_empty() && self.coeffs.values().all(|v| v.is_positive())
    }

    /// Coefficient of the point class.
    pub fn degree_of(&self) -> BigInt {
        self.coeff(0)
    }

    /// Largest dimension carrying a nonzero coefficient.
    pub fn top_dim(&self) -> Option<u32> {
        self.terms().map(|(p, _)| self.model.dim_of(p)).max()
    }

    /// Component of homological dimension `d`.
    pub fn component(&self, d: u32) -> Self {
        let mut out = Self::zero(&self.model);
        for (p, v) in self.terms() {
            if self.model.dim_of(p) == d {
                out.set(p, v.clone());
            }
        }
        out
    }

    /// (label, decimal string) pairs for every nonzero term, canonical order.
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        self.terms().map(|(p, v)| (self.model.label(p), v.to_string())).collect()
    }
}

fn partition_at<'a>(model: &'a RingModel, pos: usize) -> &'a Partition {
    match &model.basis()[pos] {
        BasisElement::Schubert(p) => p,
        BasisElement::Power(_) => unreachable!("projective positions handled separately"),
    }
}

impl PartialEq for GradedClass {
    fn eq(&self, other: &Self) -> bool {
        self.model.kind == other.model.kind && self.coeffs == other.coeffs
    }
}

impl Eq for GradedClass {}

impl fmt::Display for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, v) in self.coeffs.iter().rev() {
            let mag = v.clone().abs();
            if first {
                if v.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if v.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mag.is_one() {
                write!(f, "{}", self.model.label(*p))?;
            } else {
                write!(f, "{}·{}", mag, self.model.label(*p))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::ops::Add for &GradedClass {
    type Output = GradedClass;
    fn add(self, rhs: &GradedClass) -> GradedClass {
        GradedClass::add(self, rhs)
    }
}

impl std::ops::Sub for &GradedClass {
    type Output = GradedClass;
    fn sub(self, rhs: &GradedClass) -> GradedClass {
        GradedClass::sub(self, rhs)
    }
}

impl std::ops::Mul for &GradedClass {
    type Output = GradedClass;
    fn mul(self, rhs: &GradedClass) -> GradedClass {
        self.multiply(rhs)
    }
}
