use std::sync::Arc;

use proptest::prelude::*;

use gaugecount::automorphisms::GroupEndomorphism;
use gaugecount::counting::count;
use gaugecount::group::{builtin_group, GroupFamily, GroupRef};
use gaugecount::lattice::{make_twist, EdgeSelector, LatticeGraph};
use gaugecount::matter::{FermionSpec, GroupAction, MatterSpec, UnitaryRep, Vacuum};
use gaugecount::oracle::{oracle_count, DEFAULT_ORACLE_BUDGET};

fn groups() -> Vec<GroupRef> {
    [
        GroupFamily::Cyclic(2),
        GroupFamily::Cyclic(3),
        GroupFamily::Cyclic(4),
        GroupFamily::Symmetric(3),
        GroupFamily::Dihedral(4),
        GroupFamily::Quaternion,
    ]
    .iter()
    .map(|f| Arc::new(builtin_group(f).unwrap()))
    .collect()
}

fn lattice() -> impl Strategy<Value = LatticeGraph> {
    (1usize..=3).prop_flat_map(|v| {
        prop::collection::vec((0..v, 0..v), 0..=4).prop_map(move |edges| LatticeGraph::new(v, edges).unwrap())
    })
}

fn matter(g: &GroupRef, kind: u8, ns: usize, sites: usize) -> MatterSpec {
    let rep = UnitaryRep::standard(g).unwrap();
    match kind {
        0 => MatterSpec::None,
        1 => MatterSpec::Scalar(GroupAction::left_mult(g)),
        2 => MatterSpec::Fermion(FermionSpec::simple(rep, ns).unwrap()),
        _ if sites % 2 == 0 => MatterSpec::Fermion(FermionSpec::staggered(rep).unwrap()),
        _ => MatterSpec::Fermion(FermionSpec::new(vec![rep.clone(), rep], 1, Vacuum::Trivial).unwrap()),
    }
}

fn twist_map(g: &GroupRef, kind: u8, h: usize) -> Option<GroupEndomorphism> {
    match kind {
        0 => None,
        1 => Some(GroupEndomorphism::identity(g)),
        2 => Some(GroupEndomorphism::constant_identity(g)),
        3 => Some(GroupEndomorphism::inner(g, h % g.order())),
        _ => GroupEndomorphism::inversion(g).ok(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn engine_matches_oracle(
        gi in 0usize..6,
        l in lattice(),
        mk in 0u8..4,
        ns in 1usize..=2,
        tk in 0u8..5,
        h in 0usize..8,
        mask in 0u8..16,
    ) {
        let g = &groups()[gi];
        let spec = matter(g, mk, ns, l.sites());
        let twist = twist_map(g, tk, h).map(|phi| {
            let edges = (0..l.edge_count()).filter(|e| mask >> e & 1 == 1).collect();
            make_twist(&l, phi, &EdgeSelector::Explicit(edges)).unwrap()
        });
        let formula = count(g, &g.conjugacy_classes(), &l, &spec, twist.as_ref()).unwrap().total;
        let oracle = oracle_count(g, &l, &spec, twist.as_ref(), DEFAULT_ORACLE_BUDGET).unwrap();
        prop_assert_eq!(formula, oracle);
    }
}
