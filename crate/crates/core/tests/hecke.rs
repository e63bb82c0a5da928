use hecke_core::ambient::{Ambient, Instance, IsoType};
use hecke_core::hecke::*;
use hecke_core::rational::int;
use hecke_core::report::Check;

fn assert_all(checks: &[Check]) {
    let bad: Vec<&Check> = checks.iter().filter(|c| c.failed()).collect();
    assert!(bad.is_empty(), "failed checks: {bad:#?}");
}

fn full_suite(inst: Instance, phi: IsoType) -> Vec<usize> {
    let amb = Ambient::new(inst).unwrap();
    let alg = HeckeAlgebra::new(&amb, &phi).unwrap();
    assert_all(&verify_geometric(&alg));
    assert_all(&verify_cellular(&alg));
    assert_all(&verify_idempotents(&alg));
    assert_all(&verify_cellalg(&alg));
    assert_all(&verify_cell_idem(&alg));
    assert_all(&verify_compo(&alg));
    let modules: Vec<HeckeModule> = alg.types().iter().map(|nu| HeckeModule::new(&alg, nu).unwrap()).collect();
    for m in &modules {
        assert_all(&verify_cellmod(m));
        assert_all(&verify_multiplicities(m));
    }
    assert_all(&verify_equivariance(&alg, &modules));
    alg.idempotents().unwrap().iter().map(|e| alg.matrix(e).rank()).collect()
}

#[test]
fn johnson_6_3() {
    assert_eq!(full_suite(Instance::sets(6), IsoType::Size(3)), [1, 5, 9, 5]);
}

#[test]
fn grassmann_2_4_2() {
    assert_eq!(full_suite(Instance::field(2, 4), IsoType::partition(vec![1, 1])), [1, 14, 20]);
}

#[test]
fn chain_ring_z4_squared() {
    assert_eq!(full_suite(Instance::chain_ring(2, 2, 2), IsoType::partition(vec![2])), [1, 2, 3]);
}

#[test]
fn a_matrix_of_johnson_6_3() {
    let amb = Ambient::new(Instance::sets(6)).unwrap();
    let alg = HeckeAlgebra::new(&amb, &IsoType::Size(3)).unwrap();
    let a = alg.a_matrix().unwrap();
    // A[w][k] = C(3 - k, w - k) * C(6 - w - k, 3 - w)
    let want = [[20, 0, 0, 0], [30, 6, 0, 0], [12, 6, 2, 0], [1, 1, 1, 1]];
    for w in 0..4 {
        for k in 0..4 {
            assert_eq!(a[w][k], int(want[w][k]), "A[{w}][{k}]");
        }
    }
}
