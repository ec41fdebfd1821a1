//! CSM/SSM classes of Schubert cells: generative computation on projective
//! space, the tangent-class engine for Grassmannians, and square cell/class
//! tables with their structural checks (unit triangularity, point-row purity,
//! partition of unity, sign alternation, rectangle duality).

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

use crate::io::{model_from_spec, model_to_spec, IngestError, JsonInt, ModelSpec};
use crate::ring::{BasisElement, GradedClass, ModelKind, RingModel};
use crate::sym::{complete_homogeneous, schur_coefficients, Poly};
use crate::Partition;

/// c(TX) ∩ [X] in the basis of the model.
pub fn tangent_chern_class(model: &Arc<RingModel>) -> GradedClass {
    match model.kind() {
        ModelKind::Projective { n } => tangent_chern_projective(n),
        ModelKind::Grassmannian { k, n } => tangent_chern_grassmannian(k, n),
    }
}

/// c(TP^n) ∩ [P^n] = (1+h)^{n+1} ∩ [P^n], computed by ring multiplication.
pub fn tangent_chern_projective(n: u32) -> GradedClass {
    let model = RingModel::projective(n);
    let mut one_plus_h = GradedClass::unit(&model);
    if n >= 1 {
        one_plus_h.add_at(model.position(&BasisElement::Power(1)).unwrap(), BigInt::one());
    }
    let mut out = GradedClass::unit(&model);
    for _ in 0..=n {
        out = out.multiply(&one_plus_h);
    }
    out
}

/// c(T Gr(k,n)) ∩ [Gr(k,n)] expanded over the Schubert basis.
///
/// The tangent bundle is Hom(S, Q), with total Chern class ∏(1 + x_i + y_j)
/// over the Chern roots x of the dual tautological subbundle and y of the
/// quotient. Grouping by the x variables,
///   ∏_j (1 + x_i + y_j) = Σ_r e_r(y) (1 + x_i)^{m-r},    m = n - k,
/// and the tautological sequence makes e_r(y) = h_r(x), so the whole class is
/// a symmetric polynomial in the k variables x. Schur expansion then maps
/// s_λ to the Schubert class of codimension |λ| (zero when λ leaves the
/// rectangle, by the h-ideal relations).
pub fn tangent_chern_grassmannian(k: u32, n: u32) -> GradedClass {
    assert!(1 <= k && k < n, "Grassmannian model needs 1 <= k < n");
    let model = RingModel::grassmannian(k, n);
    let rect = model.rectangle().unwrap();
    let (k, m) = (k as usize, n - k);

    let mut prod = Poly::constant(k, 1);
    for i in 0..k {
        let one_plus_xi = Poly::constant(k, 1).add(&Poly::variable(k, i));
        let mut factor = Poly::zero(k);
        for r in 0..=m {
            factor = factor.add(&complete_homogeneous(k, r).mul(&one_plus_xi.pow(m - r)));
        }
        prod = prod.mul(&factor);
    }

    let mut out = GradedClass::zero(&model);
    for (lam, c) in schur_coefficients(&prod) {
        if lam.fits_in(rect) {
            out = out.add(&GradedClass::sigma(&model, &lam).scale(&c));
        }
    }
    out
}

fn push_forward_projective(src: &GradedClass, dst: &Arc<RingModel>) -> GradedClass {
    // linear embedding P^j -> P^n: [P^d] keeps its coefficient
    let mut out = GradedClass::zero(dst);
    for (pos, c) in src.terms() {
        let d = src.model().dim_of(pos);
        let at = dst
            .position(&BasisElement::Power(dst.dim_x() - d))
            .expect("source dimension fits the ambient model");
        out.add_at(at, c.clone());
    }
    out
}

/// CSM class of the dimension-j cell of P^n (the complement of P^{j-1} in
/// P^j), pushed forward to P^n: the difference of the closed-subspace classes
/// c(TP^j) ∩ [P^j] and c(TP^{j-1}) ∩ [P^{j-1}].
pub fn csm_cell_projective(j: u32, n: u32) -> GradedClass {
    assert!(j <= n, "cell dimension {j} exceeds ambient dimension {n}");
    let model = RingModel::projective(n);
    let closed = push_forward_projective(&tangent_chern_projective(j), &model);
    if j == 0 {
        return closed;
    }
    closed.sub(&push_forward_projective(&tangent_chern_projective(j - 1), &model))
}

/// SSM class of the dimension-j cell of P^n: the CSM class capped with the
/// inverse total Chern class of the ambient tangent bundle.
pub fn ssm_cell_projective(j: u32, n: u32) -> GradedClass {
    csm_cell_projective(j, n).multiply(&tangent_chern_projective(n).invert_unit())
}

/// One sign failure in a table: (-1)^{dim u - dim w} a(w;u) came out negative.
#[derive(Clone, Debug, PartialEq)]
pub struct SignViolation {
    pub cell: usize,
    pub class_pos: usize,
    pub value: BigInt,
}

/// Square table of cell classes over a Grassmannian model: row u holds the
/// class of cell u expanded over the Schubert basis, both in canonical order.
#[derive(Clone, Debug)]
pub struct CsmTable {
    model: Arc<RingModel>,
    rows: Vec<GradedClass>,
}

/// Same shape as [`CsmTable`], holding SSM classes.
#[derive(Clone, Debug)]
pub struct SsmTable {
    model: Arc<RingModel>,
    rows: Vec<GradedClass>,
}

fn rows_from_matrix(model: &Arc<RingModel>, matrix: &[Vec<BigInt>]) -> Vec<GradedClass> {
    assert_eq!(matrix.len(), model.basis_len(), "table must be square");
    matrix.iter().map(|row| GradedClass::from_dense(model, row)).collect()
}

macro_rules! table_common {
    ($T:ident) => {
        impl PartialEq for $T {
            fn eq(&self, other: &Self) -> bool {
                self.model.kind() == other.model.kind() && self.rows == other.rows
            }
        }

        impl $T {
            pub fn from_matrix(model: &Arc<RingModel>, matrix: &[Vec<BigInt>]) -> Self {
                $T { model: model.clone(), rows: rows_from_matrix(model, matrix) }
            }

            pub fn from_rows(model: &Arc<RingModel>, rows: Vec<GradedClass>) -> Self {
                assert_eq!(rows.len(), model.basis_len(), "table must be square");
                for r in &rows {
                    assert_eq!(r.model().kind(), model.kind(), "row model mismatch");
                }
                $T { model: model.clone(), rows }
            }

            pub fn model(&self) -> &Arc<RingModel> {
                &self.model
            }

            pub fn len(&self) -> usize {
                self.rows.len()
            }

            pub fn is_empty(&self) -> bool {
                self.rows.is_empty()
            }

            pub fn row(&self, cell: usize) -> &GradedClass {
                &self.rows[cell]
            }

            pub fn rows(&self) -> &[GradedClass] {
                &self.rows
            }

            pub fn entry(&self, cell: usize, class_pos: usize) -> BigInt {
                self.rows[cell].coeff(class_pos)
            }

            pub fn to_matrix(&self) -> Vec<Vec<BigInt>> {
                self.rows.iter().map(|r| r.to_dense()).collect()
            }

            /// Diagonal entries are 1 and every same-or-higher-dimension
            /// off-diagonal entry vanishes: each row is its closure class
            /// plus strictly lower-dimensional corrections.
            pub fn is_unitriangular(&self) -> bool {
                (0..self.len()).all(|u| {
                    let du = self.model.dim_of(u);
                    (0..self.len()).all(|w| {
                        if w == u {
                            self.entry(u, w).is_one()
                        } else if self.model.dim_of(w) >= du {
                            self.entry(u, w).is_zero()
                        } else {
                            true
                        }
                    })
                })
            }

            /// The point-cell row is exactly the point class.
            pub fn point_row_is_pure(&self) -> bool {
                self.rows[0] == GradedClass::point(&self.model)
            }
        }
    };
}

table_common!(CsmTable);
table_common!(SsmTable);

impl CsmTable {
    /// Cap every row with the inverse ambient total Chern class.
    pub fn to_ssm(&self) -> SsmTable {
        let inv = tangent_chern_class(&self.model).invert_unit();
        SsmTable {
            model: self.model.clone(),
            rows: self.rows.iter().map(|r| r.multiply(&inv)).collect(),
        }
    }

    /// Sum of all rows; the cells partition the space, so this must equal the
    /// tangent class expansion.
    pub fn row_sum(&self) -> GradedClass {
        let mut s = GradedClass::zero(&self.model);
        for r in &self.rows {
            s = s.add(r);
        }
        s
    }

    pub fn partition_of_unity_holds(&self) -> bool {
        self.row_sum() == tangent_chern_class(&self.model)
    }
}

impl SsmTable {
    /// Cap every row with the ambient total Chern class.
    pub fn to_csm(&self) -> CsmTable {
        let tangent = tangent_chern_class(&self.model);
        CsmTable {
            model: self.model.clone(),
            rows: self.rows.iter().map(|r| r.multiply(&tangent)).collect(),
        }
    }

    /// All (cell, class) pairs where (-1)^{dim gap} · entry < 0. Empty means
    /// the sign-alternation property holds.
    pub fn alternation_violations(&self) -> Vec<SignViolation> {
        let mut out = Vec::new();
        for u in 0..self.len() {
            let du = self.model.dim_of(u);
            for w in 0..self.len() {
                let v = self.entry(u, w);
                if v.is_zero() {
                    continue;
                }
                let gap = du as i64 - self.model.dim_of(w) as i64;
                let signed = if gap.rem_euclid(2) == 1 { -v.clone() } else { v.clone() };
                if signed < BigInt::zero() {
                    out.push(SignViolation { cell: u, class_pos: w, value: v });
                }
            }
        }
        out
    }

    /// Rows and columns reindexed by the rectangle duality λ ↦ λ^∨, giving
    /// the table in the codimension-label convention. Involution.
    pub fn rectangle_dual(&self) -> SsmTable {
        let perm = dual_permutation(&self.model);
        let mut matrix = vec![vec![BigInt::zero(); self.len()]; self.len()];
        for u in 0..self.len() {
            for w in 0..self.len() {
                matrix[perm[u]][perm[w]] = self.entry(u, w);
            }
        }
        SsmTable::from_matrix(&self.model, &matrix)
    }

    /// Row of the cell with codimension label `sigma`, columns re-labeled by
    /// duality. Rows produced this way are stable across the ambient
    /// Grassmannian: for n < n' they agree wherever both labels fit.
    pub fn stable_row(&self, sigma: &Partition) -> BTreeMap<Partition, BigInt> {
        let rect = self.model.rectangle().expect("stable rows need a Grassmannian model");
        let cell = self
            .model
            .position(&BasisElement::Schubert(sigma.dual_in_rectangle(rect)))
            .expect("codimension label fits the rectangle");
        let mut out = BTreeMap::new();
        for (pos, c) in self.rows[cell].terms() {
            if let BasisElement::Schubert(w) = &self.model.basis()[pos] {
                out.insert(w.dual_in_rectangle(rect), c.clone());
            }
        }
        out
    }
}

fn dual_permutation(model: &Arc<RingModel>) -> Vec<usize> {
    let rect = model.rectangle().expect("rectangle duality needs a Grassmannian model");
    (0..model.basis_len())
        .map(|p| match &model.basis()[p] {
            BasisElement::Schubert(lam) => model
                .position(&BasisElement::Schubert(lam.dual_in_rectangle(rect)))
                .unwrap(),
            BasisElement::Power(_) => unreachable!(),
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    model: ModelSpec,
    basis: Vec<Vec<u32>>,
    rows: Vec<Vec<JsonInt>>,
}

/// Canonical basis labels, dimension-ascending: partition parts on a
/// Grassmannian, single-part dimension labels on projective space.
pub fn basis_labels(model: &RingModel) -> Vec<Vec<u32>> {
    (0..model.basis_len())
        .map(|p| match &model.basis()[p] {
            BasisElement::Schubert(lam) => lam.parts().to_vec(),
            // a power h^c is labeled by its dimension, matching the Gr(1,·)
            // single-part labels; the point gets the empty label
            BasisElement::Power(c) => {
                let d = model.dim_x() - c;
                if d == 0 {
                    vec![]
                } else {
                    vec![d]
                }
            }
        })
        .collect()
}

/// Parse the JSON table format: `model`, `basis` (canonical order, spelled
/// out so files are self-describing), `rows` (square, decimal strings).
pub fn parse_table(text: &str) -> Result<(Arc<RingModel>, Vec<Vec<BigInt>>), IngestError> {
    let file: TableFile = serde_json::from_str(text)?;
    let model = model_from_spec(&file.model)?;
    if file.basis != basis_labels(&model) {
        return Err(IngestError::invalid(
            "basis does not match the canonical order of the model (ascending dimension)",
        ));
    }
    if file.rows.len() != model.basis_len() {
        return Err(IngestError::invalid(format!(
            "expected {} rows, got {}",
            model.basis_len(),
            file.rows.len()
        )));
    }
    let mut matrix = Vec::with_capacity(file.rows.len());
    for (i, row) in file.rows.iter().enumerate() {
        if row.len() != model.basis_len() {
            return Err(IngestError::invalid(format!(
                "row {i} has {} entries, expected {}",
                row.len(),
                model.basis_len()
            )));
        }
        matrix.push(row.iter().map(|v| v.0.clone()).collect());
    }
    Ok((model, matrix))
}

pub fn emit_table(model: &RingModel, matrix: &[Vec<BigInt>]) -> String {
    let file = TableFile {
        model: model_to_spec(model),
        basis: basis_labels(model),
        rows: matrix
            .iter()
            .map(|row| row.iter().map(|v| JsonInt(v.clone())).collect())
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("table serialization cannot fail")
}
