//! Cell-class pipelines across models: sign alternation and top terms for
//! all projective cells, the rank-one Grassmannian specialization, and the
//! CSM/SSM table conversions on randomized tables.

use csm_core::cells::{
    csm_cell_projective, ssm_cell_projective, tangent_chern_class, CsmTable, SsmTable,
};
use csm_core::ring::{GradedClass, RingModel};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use std::sync::Arc;

#[test]
fn projective_cells_alternate_and_carry_unit_top_term() {
    for n in 0..=10u32 {
        let model = RingModel::projective(n);
        for j in 0..=n {
            let s = ssm_cell_projective(j, n);
            assert_eq!(s.top_dim(), Some(j), "top dimension is the cell dimension");
            assert!(s.coeff(model.positions_of_dim(j)[0]).is_one(), "closure class has coefficient 1");
            for (pos, c) in s.terms() {
                let gap = j - model.dim_of(pos);
                let signed = if gap % 2 == 1 { -c.clone() } else { c.clone() };
                assert!(signed > BigInt::zero(), "j={j} n={n} pos={pos}");
            }
        }
    }
}

#[test]
fn rank_one_grassmannian_reproduces_projective_pipeline() {
    // Gr(1, n+1) and P^n have the same graded basis, one class per dimension,
    // so classes transport by their dense coefficient vectors
    for n in 1..=6u32 {
        let gr = RingModel::grassmannian(1, n + 1);
        let csm_rows: Vec<GradedClass> =
            (0..=n).map(|j| GradedClass::from_dense(&gr, &csm_cell_projective(j, n).to_dense())).collect();
        let table = CsmTable::from_rows(&gr, csm_rows);
        assert!(table.partition_of_unity_holds());
        let ssm = table.to_ssm();
        for j in 0..=n {
            assert_eq!(ssm.row(j as usize).to_dense(), ssm_cell_projective(j, n).to_dense());
        }
        assert!(ssm.is_unitriangular());
        assert!(ssm.point_row_is_pure());
        assert!(ssm.alternation_violations().is_empty());
    }
}

fn table_models() -> Vec<Arc<RingModel>> {
    vec![RingModel::grassmannian(2, 4), RingModel::grassmannian(2, 5)]
}

prop_compose! {
    fn arb_matrix()(model_idx in 0usize..2)(
        model_idx in Just(model_idx),
        entries in prop::collection::vec(
            -20i64..21,
            {
                let len = table_models()[model_idx].basis_len();
                len * len
            },
        ),
    ) -> (Arc<RingModel>, Vec<Vec<BigInt>>) {
        let model = table_models()[model_idx].clone();
        let len = model.basis_len();
        let matrix = entries
            .chunks(len)
            .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        (model, matrix)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn table_conversions_are_mutual_inverses((model, matrix) in arb_matrix()) {
        let csm = CsmTable::from_matrix(&model, &matrix);
        prop_assert_eq!(csm.to_ssm().to_csm(), csm);
        let ssm = SsmTable::from_matrix(&model, &matrix);
        prop_assert_eq!(ssm.to_csm().to_ssm(), ssm);
    }

    #[test]
    fn conversion_caps_row_by_row((model, matrix) in arb_matrix()) {
        // converting the whole table agrees with capping individual rows
        let csm = CsmTable::from_matrix(&model, &matrix);
        let inv = tangent_chern_class(&model).invert_unit();
        let ssm = csm.to_ssm();
        for u in 0..csm.len() {
            prop_assert_eq!(ssm.row(u), &csm.row(u).multiply(&inv));
        }
    }
}
