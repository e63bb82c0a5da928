use hecke_core::ambient::{arrow_types, Ambient, Instance, IsoType};
use hecke_core::oracle::{burnside_count, group_elements, group_order, PermutationAction};
use hecke_core::rational::int;

#[test]
fn group_orders() {
    for (inst, order) in [(Instance::sets(3), 6), (Instance::field(2, 3), 168), (Instance::chain_ring(2, 2, 2), 96)] {
        let amb = Ambient::new(inst).unwrap();
        assert_eq!(group_order(amb.num_points(), amb.generator_points(), 10_000).unwrap(), order);
    }
}

#[test]
fn orbits_match_burnside() {
    for inst in [Instance::sets(4), Instance::field(2, 3), Instance::chain_ring(2, 2, 2), Instance::field(3, 2)] {
        let amb = Ambient::new(inst).unwrap();
        let all: Vec<usize> = (0..amb.len()).collect();
        let gens = amb.induced_permutations(&all).unwrap();
        let action = PermutationAction::new(all.len(), gens.clone()).unwrap();
        let elements = group_elements(all.len(), &gens, 100_000).unwrap();
        assert_eq!(int(action.orbits().len() as i64), burnside_count(&elements));
        assert_eq!(action.orbits().len(), amb.types().len());
    }
}

#[test]
fn arrows_from_one_into_two_one() {
    let amb = Ambient::new(Instance::chain_ring(2, 2, 2)).unwrap();
    let arrows = arrow_types(&amb, &IsoType::partition(vec![1]), &IsoType::partition(vec![2, 1])).unwrap();
    assert_eq!(arrows.len(), 2);
}

#[test]
fn subobject_counts() {
    let count = |inst| Ambient::new(inst).unwrap().len();
    assert_eq!(count(Instance::sets(5)), 32);
    assert_eq!(count(Instance::field(2, 3)), 16);
    assert_eq!(count(Instance::chain_ring(2, 2, 2)), 15);
}
