//! Hyperplane arrangements in projective space: the intersection lattice of
//! the associated central arrangement with its Möbius function, the Poincaré
//! polynomial, and the complement's characteristic classes obtained by
//! truncated series substitution.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use crate::io::{IngestError, JsonInt};
use crate::ring::{GradedClass, RingModel};

/// Divides a row by its content and makes the leading entry positive; the
/// zero row is left alone.
fn make_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for v in row.iter() {
        g = g.gcd(v);
    }
    if g.is_zero() {
        return;
    }
    if row.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative()) {
        g = -g;
    }
    for v in row.iter_mut() {
        *v = &*v / &g;
    }
}

/// Fraction-free reduced row echelon form over the integers: pivot columns
/// strictly increase, every pivot column is zero outside its pivot row, each
/// row is primitive with positive leading entry, zero rows are dropped. Two
/// inputs canonicalize identically exactly when they span the same row
/// space, and the row count of the result is the rank.
pub fn canonical_form(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    for row in m.iter_mut() {
        make_primitive(row);
    }
    m.retain(|r| r.iter().any(|v| !v.is_zero()));
    let ncols = match m.first() {
        Some(r) => r.len(),
        None => return m,
    };
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r == rank || m[r][col].is_zero() {
                continue;
            }
            let g = m[rank][col].gcd(&m[r][col]);
            let (fa, fb) = (&m[rank][col] / &g, &m[r][col] / &g);
            for c in 0..ncols {
                m[r][c] = &fa * &m[r][c] - &fb * &m[rank][c];
            }
            make_primitive(&mut m[r]);
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    m.retain(|r| r.iter().any(|v| !v.is_zero()));
    m
}

/// Whether `row` lies in the row space of a canonical-form matrix.
fn in_row_space(row: &[BigInt], canon: &[Vec<BigInt>]) -> bool {
    let mut v = row.to_vec();
    for r in canon {
        let c = r.iter().position(|x| !x.is_zero()).expect("canonical rows are nonzero");
        if v[c].is_zero() {
            continue;
        }
        let g = r[c].gcd(&v[c]);
        let (fa, fb) = (&r[c] / &g, &v[c] / &g);
        for j in 0..v.len() {
            v[j] = &fa * &v[j] - &fb * &r[j];
        }
    }
    v.iter().all(|x| x.is_zero())
}

/// A hyperplane arrangement in P^n, stored as primitive integer coefficient
/// rows of length n+1 with positive leading entries; no zero rows, no two
/// rows proportional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    n: u32,
    hyperplanes: Vec<Vec<BigInt>>,
}

impl Arrangement {
    pub fn new(n: u32, rows: Vec<Vec<BigInt>>) -> Result<Arrangement, IngestError> {
        let mut hyperplanes = Vec::with_capacity(rows.len());
        let mut seen = BTreeSet::new();
        for (i, mut row) in rows.into_iter().enumerate() {
            if row.len() != n as usize + 1 {
                return Err(IngestError::invalid(format!(
                    "hyperplane {i} has {} coefficients, ambient P^{n} needs {}",
                    row.len(),
                    n + 1
                )));
            }
            make_primitive(&mut row);
            if row.iter().all(|v| v.is_zero()) {
                return Err(IngestError::invalid(format!("hyperplane {i} is the zero row")));
            }
            if !seen.insert(row.clone()) {
                return Err(IngestError::invalid(format!(
                    "hyperplane {i} is proportional to an earlier one"
                )));
            }
            hyperplanes.push(row);
        }
        Ok(Arrangement { n, hyperplanes })
    }

    /// Clears denominators row by row, then ingests as integer rows.
    pub fn from_rational(n: u32, rows: &[Vec<BigRational>]) -> Result<Arrangement, IngestError> {
        let int_rows = rows
            .iter()
            .map(|row| {
                let mut l = BigInt::one();
                for v in row {
                    l = l.lcm(v.denom());
                }
                row.iter().map(|v| v.numer() * (&l / v.denom())).collect()
            })
            .collect();
        Arrangement::new(n, int_rows)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn hyperplanes(&self) -> &[Vec<BigInt>] {
        &self.hyperplanes
    }

    pub fn lattice(&self) -> IntersectionLattice {
        IntersectionLattice::build(self)
    }
}

/// One lattice element: a linear subspace of C^{n+1} cut out by the
/// canonical-form equation matrix, with its codimension and Möbius value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeElement {
    equations: Vec<Vec<BigInt>>,
    mobius: BigInt,
}

impl LatticeElement {
    pub fn equations(&self) -> &[Vec<BigInt>] {
        &self.equations
    }

    pub fn codim(&self) -> usize {
        self.equations.len()
    }

    pub fn mobius(&self) -> &BigInt {
        &self.mobius
    }
}

/// Intersection lattice of the central arrangement over an [`Arrangement`]:
/// all subspaces obtained as intersections of hyperplanes, ordered by
/// reverse inclusion, graded by codimension, with Möbius values μ(0̂, ·).
/// Elements are sorted by codimension, then by equation matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionLattice {
    elements: Vec<LatticeElement>,
}

impl IntersectionLattice {
    /// Worklist closure: repeatedly intersect known subspaces with the
    /// hyperplanes until nothing new appears, then solve for Möbius values
    /// in codimension order.
    pub fn build(a: &Arrangement) -> IntersectionLattice {
        let mut set: BTreeSet<Vec<Vec<BigInt>>> = BTreeSet::new();
        set.insert(Vec::new());
        let mut work: Vec<Vec<Vec<BigInt>>> = vec![Vec::new()];
        while let Some(e) = work.pop() {
            for h in a.hyperplanes() {
                let mut rows = e.clone();
                rows.push(h.clone());
                let c = canonical_form(&rows);
                if set.insert(c.clone()) {
                    work.push(c);
                }
            }
        }
        let mut mats: Vec<Vec<Vec<BigInt>>> = set.into_iter().collect();
        mats.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

        // μ(0̂) = 1 and Σ_{y ≤ z} μ(y) = 0 for z above the bottom
        let mut elements: Vec<LatticeElement> = mats
            .into_iter()
            .map(|equations| LatticeElement { equations, mobius: BigInt::zero() })
            .collect();
        elements[0].mobius = BigInt::one();
        for z in 1..elements.len() {
            let mut s = BigInt::zero();
            for y in 0..z {
                if leq_matrices(&elements[y].equations, &elements[z].equations) {
                    s += &elements[y].mobius;
                }
            }
            elements[z].mobius = -s;
        }
        IntersectionLattice { elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[LatticeElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &LatticeElement {
        &self.elements[i]
    }

    /// y ≤ z: the subspace of y contains the subspace of z.
    pub fn leq(&self, y: usize, z: usize) -> bool {
        leq_matrices(&self.elements[y].equations, &self.elements[z].equations)
    }

    /// Σ_{y ≤ z} μ(y) = 0 for every z above the bottom, re-verified by
    /// direct summation.
    pub fn mobius_sums_vanish(&self) -> bool {
        (1..self.len()).all(|z| {
            let total: BigInt =
                (0..self.len()).filter(|&y| self.leq(y, z)).map(|y| self.elements[y].mobius.clone()).sum();
            total.is_zero()
        })
    }

    /// Geometric-lattice sign pattern: (-1)^{codim z} μ(z) > 0 for every z.
    pub fn signs_alternate(&self) -> bool {
        self.elements.iter().all(|e| {
            let signed =
                if e.codim() % 2 == 1 { -e.mobius.clone() } else { e.mobius.clone() };
            signed.is_positive()
        })
    }

    /// Every pairwise intersection of elements is again an element.
    pub fn closed_under_intersection(&self) -> bool {
        let set: BTreeSet<&Vec<Vec<BigInt>>> =
            self.elements.iter().map(|e| &e.equations).collect();
        self.elements.iter().enumerate().all(|(i, a)| {
            self.elements.iter().skip(i).all(|b| {
                let mut rows = a.equations.clone();
                rows.extend(b.equations.iter().cloned());
                set.contains(&canonical_form(&rows))
            })
        })
    }

    /// π(t) = Σ_z μ(0̂, z) (-t)^{codim z}.
    pub fn poincare_polynomial(&self) -> PoincarePolynomial {
        let top = self.elements.iter().map(|e| e.codim()).max().unwrap_or(0);
        let mut coeffs = vec![BigInt::zero(); top + 1];
        for e in &self.elements {
            if e.codim() % 2 == 0 {
                coeffs[e.codim()] += &e.mobius;
            } else {
                coeffs[e.codim()] -= &e.mobius;
            }
        }
        PoincarePolynomial::from_coeffs(coeffs)
    }
}

fn leq_matrices(y: &[Vec<BigInt>], z: &[Vec<BigInt>]) -> bool {
    y.iter().all(|row| in_row_space(row, z))
}

/// Integer polynomial in a formal variable t, coefficients ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincarePolynomial {
    coeffs: Vec<BigInt>,
}

impl PoincarePolynomial {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> PoincarePolynomial {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|v| v.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        PoincarePolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.coeffs.iter().all(|v| !v.is_negative())
    }

    pub fn constant_term_is_one(&self) -> bool {
        self.coeffs[0].is_one()
    }

    /// c_SM(U) = π(-h/(1+h)) · (c(TP^n) ∩ [P^n]), all arithmetic truncated
    /// at h^{n+1}.
    pub fn csm_complement(&self, n: u32) -> GradedClass {
        // -h/(1+h) = -h + h^2 - h^3 + ...
        let len = n as usize + 1;
        let s: Vec<BigInt> = (0..len)
            .map(|i| {
                if i == 0 {
                    BigInt::zero()
                } else if i % 2 == 0 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                }
            })
            .collect();
        let composed = self.substitute(&s, n);
        composed.multiply(&crate::cells::tangent_chern_projective(n))
    }

    /// (-1)^{dim U} š_SM(U, P^n) = π(h/(1-h)) ∩ [P^n].
    pub fn ssm_signed_complement(&self, n: u32) -> GradedClass {
        // h/(1-h) = h + h^2 + h^3 + ...
        let len = n as usize + 1;
        let s: Vec<BigInt> = (0..len)
            .map(|i| if i == 0 { BigInt::zero() } else { BigInt::one() })
            .collect();
        self.substitute(&s, n)
    }

    /// π(S(h)) ∩ [P^n] by Horner evaluation in Z[h]/(h^{n+1}); the power
    /// series argument is given by its truncated coefficient list.
    fn substitute(&self, s: &[BigInt], n: u32) -> GradedClass {
        let len = n as usize + 1;
        let mut acc = vec![BigInt::zero(); len];
        acc[0] = self.coeff(self.degree());
        for k in (0..self.degree()).rev() {
            acc = truncated_mul(&acc, s);
            acc[0] += self.coeff(k);
        }
        let model = RingModel::projective(n);
        // h^c caps [P^n] into the class of dimension n - c
        let mut dense = vec![BigInt::zero(); len];
        for (c, v) in acc.into_iter().enumerate() {
            dense[n as usize - c] = v;
        }
        GradedClass::from_dense(&model, &dense)
    }
}

fn truncated_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let len = a.len();
    let mut out = vec![BigInt::zero(); len];
    for i in 0..len {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..len - i {
            if !b[j].is_zero() {
                out[i + j] += &a[i] * &b[j];
            }
        }
    }
    out
}

/// Everything the complement computation produces, in one place.
pub struct ComplementReport {
    pub poincare: PoincarePolynomial,
    pub csm: GradedClass,
    pub ssm_signed: GradedClass,
    pub effective: bool,
    pub euler_characteristic: BigInt,
}

pub fn complement_report(a: &Arrangement) -> ComplementReport {
    let pi = a.lattice().poincare_polynomial();
    let csm = pi.csm_complement(a.n());
    let ssm_signed = pi.ssm_signed_complement(a.n());
    ComplementReport {
        effective: ssm_signed.is_effective(),
        euler_characteristic: csm.degree_of(),
        poincare: pi,
        csm,
        ssm_signed,
    }
}

impl ComplementReport {
    /// JSON form: Poincaré coefficients ascending in t, classes as dense
    /// coefficient vectors in dimension-ascending basis order.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out {
            poincare: Vec<JsonInt>,
            csm: Vec<JsonInt>,
            ssm_signed: Vec<JsonInt>,
            effective: bool,
            euler_characteristic: JsonInt,
        }
        let out = Out {
            poincare: self.poincare.coeffs.iter().cloned().map(JsonInt).collect(),
            csm: self.csm.to_dense().into_iter().map(JsonInt).collect(),
            ssm_signed: self.ssm_signed.to_dense().into_iter().map(JsonInt).collect(),
            effective: self.effective,
            euler_characteristic: JsonInt(self.euler_characteristic.clone()),
        };
        serde_json::to_string_pretty(&out).expect("report serialization cannot fail")
    }
}

// ---------------------------------------------------------------------------
// arrangement file format

#[derive(Serialize, Deserialize)]
struct ArrangementFile {
    n: u32,
    hyperplanes: Vec<Vec<JsonInt>>,
}

pub fn parse_arrangement(text: &str) -> Result<Arrangement, IngestError> {
    let file: ArrangementFile = serde_json::from_str(text)?;
    let rows = file
        .hyperplanes
        .into_iter()
        .map(|row| row.into_iter().map(BigInt::from).collect())
        .collect();
    Arrangement::new(file.n, rows)
}

pub fn emit_arrangement(a: &Arrangement) -> String {
    let file = ArrangementFile {
        n: a.n(),
        hyperplanes: a
            .hyperplanes()
            .iter()
            .map(|row| row.iter().cloned().map(JsonInt).collect())
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("arrangement serialization cannot fail")
}
