//! The code examples shown in the top-level README, kept compiling and true.

use csm_core::arrangements::{complement_report, Arrangement};
use csm_core::cells::ssm_cell_projective;
use csm_core::ring::{GradedClass, RingModel};
use num_bigint::BigInt;

#[test]
fn readme_library_sketch() {
    // ssm of the big cell of P^3: [P^3] - [P^2] + [P^1] - [pt]
    let s = ssm_cell_projective(3, 3);
    assert_eq!(s.to_dense(), vec![(-1).into(), 1.into(), (-1).into(), 1.into()]);

    // the coordinate triangle in P^2: the complement is the torus, so the
    // csm class collapses to [P^2] and the signed ssm class is effective
    let rows: Vec<Vec<BigInt>> =
        vec![vec![1.into(), 0.into(), 0.into()],
             vec![0.into(), 1.into(), 0.into()],
             vec![0.into(), 0.into(), 1.into()]];
    let report = complement_report(&Arrangement::new(2, rows).unwrap());
    assert!(report.effective && report.euler_characteristic == 0.into());
    assert_eq!(report.csm, GradedClass::unit(&RingModel::projective(2)));
}
