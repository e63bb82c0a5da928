use std::sync::Arc;

use hecke_core::ambient::{Ambient, ChainRing, Instance};
use hecke_core::counting::gauss_binom;
use hecke_core::oracle::ExactMatrix;
use hecke_core::poset::{is_delta, IncidenceFunction, Poset};
use hecke_core::rational::int;
use num_bigint::BigInt;
use proptest::prelude::*;

/// A random poset on `0..n`: transitive closure of a random relation that
/// only points forward.
fn poset() -> impl Strategy<Value = Arc<Poset>> {
    (1usize..8).prop_flat_map(|n| proptest::collection::vec(any::<bool>(), n * n)).prop_map(|bits| {
        let n = (bits.len() as f64).sqrt() as usize;
        let mut rel = vec![vec![false; n]; n];
        for i in 0..n {
            rel[i][i] = true;
            for j in i + 1..n {
                rel[i][j] = bits[i * n + j];
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if rel[i][k] && rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
        let labels = (0..n).map(|i| format!("p{i}")).collect();
        Arc::new(Poset::from_relation(labels, |a, b| rel[a][b]).unwrap())
    })
}

fn random_function(p: &Arc<Poset>, seed: &[i64]) -> IncidenceFunction {
    let n = p.len();
    IncidenceFunction::from_fn(p, |x, y| int(seed[(x * n + y) % seed.len()]))
}

fn small_ints() -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-3i64..4, 1..20)
}

fn ambients() -> Vec<Ambient> {
    [Instance::sets(4), Instance::field(2, 3), Instance::chain_ring(2, 2, 2), Instance::field(3, 2)]
        .into_iter()
        .map(|i| Ambient::new(i).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn convolution_is_associative(p in poset(), a in small_ints(), b in small_ints(), c in small_ints()) {
        let (f, g, h) = (random_function(&p, &a), random_function(&p, &b), random_function(&p, &c));
        let left = f.convolve(&g).unwrap().convolve(&h).unwrap();
        let right = f.convolve(&g.convolve(&h).unwrap()).unwrap();
        for x in 0..p.len() {
            for y in 0..p.len() {
                prop_assert_eq!(left.get(x, y), right.get(x, y));
            }
        }
    }

    #[test]
    fn zeta_and_mobius_are_inverse(p in poset()) {
        let zeta = IncidenceFunction::zeta(&p);
        let mu = IncidenceFunction::mobius(&p);
        prop_assert!(is_delta(&zeta.convolve(&mu).unwrap()));
        prop_assert!(is_delta(&mu.convolve(&zeta).unwrap()));
    }

    #[test]
    fn bareiss_rank_matches_rref(rows in 1usize..6, cols in 1usize..6, seed in proptest::collection::vec(-2i64..3, 36)) {
        let m = ExactMatrix::from_fn(rows, cols, |i, j| int(seed[i * 6 + j]));
        prop_assert_eq!(m.rank(), m.rref().1.len());
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn q_pascal(n in 1i64..9, m in 0i64..9, q in prop::sample::select(vec![2u64, 3, 4, 5])) {
        let lhs = gauss_binom(n, m, q);
        let rhs = gauss_binom(n - 1, m - 1, q) + BigInt::from(q).pow(m as u32) * gauss_binom(n - 1, m, q);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn howell_form_is_canonical(
        ring in prop::sample::select(vec![(2u32, 2u32), (2, 3), (3, 1), (3, 2)]),
        rows in proptest::collection::vec(proptest::collection::vec(0u32..27, 3), 0..4),
        mix in proptest::collection::vec(0u32..27, 16),
    ) {
        let r = ChainRing::new(ring.0, ring.1, 3);
        let q = r.pow(ring.1);
        let rows: Vec<Vec<u32>> = rows.into_iter().map(|v| v.into_iter().map(|x| x % q).collect()).collect();
        let form = r.howell(rows.clone());
        prop_assert_eq!(&r.howell(form.clone()), &form);
        let mut shuffled = rows.clone();
        shuffled.reverse();
        for (i, coefs) in mix.chunks(rows.len().max(1)).take(3).enumerate() {
            let combo = (0..3)
                .map(|c| rows.iter().zip(coefs).fold(0, |s, (row, &a)| (s + r.mul(a % q, row[c])) % q))
                .collect();
            shuffled.insert(i.min(shuffled.len()), combo);
        }
        prop_assert_eq!(&r.howell(shuffled), &form);
        let mut pts = r.span_points(&form);
        pts.sort_unstable();
        pts.dedup();
        prop_assert_eq!(pts.len(), (ring.0 as usize).pow(r.log_size(&form)));
    }

    #[test]
    fn types_are_invariant_under_automorphisms(which in 0usize..4, x in any::<prop::sample::Index>(), word in proptest::collection::vec(any::<prop::sample::Index>(), 0..6)) {
        let amb = &ambients()[which];
        let gens = amb.generator_points();
        let mut y = x.index(amb.len());
        let ty = amb.iso_type(y);
        for g in word {
            y = amb.apply_points(&gens[g.index(gens.len())], y);
            prop_assert_eq!(amb.iso_type(y), ty.clone());
        }
    }

    #[test]
    fn lattice_axioms(which in 0usize..4, a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>(), c in any::<prop::sample::Index>()) {
        let amb = &ambients()[which];
        let (a, b, c) = (a.index(amb.len()), b.index(amb.len()), c.index(amb.len()));
        prop_assert_eq!(amb.meet(a, b), amb.meet(b, a));
        prop_assert_eq!(amb.join(a, b), amb.join(b, a));
        prop_assert_eq!(amb.meet(amb.meet(a, b), c), amb.meet(a, amb.meet(b, c)));
        prop_assert_eq!(amb.join(amb.join(a, b), c), amb.join(a, amb.join(b, c)));
        prop_assert_eq!(amb.meet(a, amb.join(a, b)), a);
        prop_assert_eq!(amb.join(a, amb.meet(a, b)), a);
        prop_assert!(amb.leq(amb.meet(a, b), a) && amb.leq(a, amb.join(a, b)));
        prop_assert_eq!(amb.leq(a, b), amb.meet(a, b) == a);
        prop_assert!(amb.leq(amb.zero(), a) && amb.leq(a, amb.top()));
    }
}
