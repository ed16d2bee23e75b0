use matcut::cli::{parse_instance_str, render_instance};
use matcut::graph::min_vertex_cut;
use matcut::mwc::{imwcut, is_minimal_multiway_cut};
use matcut::oracle::{random_instance, ProblemKind, SizeParams};
use matcut::stcut::givc_solve;
use matcut::matroid::Matroid;
use proptest::prelude::*;

fn params() -> impl Strategy<Value = (u64, usize, u32, usize)> {
    (any::<u64>(), 4usize..9, 20u32..60, 1usize..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn instance_files_round_trip((seed, n, density, rank) in params(), kind in 0usize..4) {
        let kind = [ProblemKind::StCut, ProblemKind::MultiwayCut, ProblemKind::Fvs, ProblemKind::Oct][kind];
        let inst = random_instance(kind, seed, SizeParams { n, density, rank, ..Default::default() });
        let text = render_instance(&inst);
        prop_assert_eq!(parse_instance_str(&text).unwrap(), inst);
    }

    #[test]
    fn stcut_outputs_are_independent_cuts((seed, n, density, rank) in params()) {
        let inst = random_instance(ProblemKind::StCut, seed, SizeParams { n, density, rank, ..Default::default() });
        let st = inst.stcut().unwrap();
        let d = st.graph.to_directed();
        let Ok(c) = min_vertex_cut(&d, &st.s, &st.t) else { return Ok(()) };
        if c.value == 0 || c.value > st.matroid.rank() {
            return Ok(());
        }
        let st = st.with_budget(c.value, st.matroid.rank() - c.value);
        for z in givc_solve(&st).unwrap().iter() {
            prop_assert_eq!(z.len(), c.value);
            prop_assert!(!d.connects(&st.s, &st.t, z));
            prop_assert!(st.matroid.is_independent(z).unwrap());
        }
    }

    #[test]
    fn multiway_outputs_are_minimal((seed, n, density, rank) in params(), k in 1usize..3) {
        let inst = random_instance(ProblemKind::MultiwayCut, seed, SizeParams { n: n + 1, density, rank, ..Default::default() });
        let r = inst.matroid.rank();
        if k > r {
            return Ok(());
        }
        let mi = inst.mwc().unwrap().with_budget(k, r - k);
        for z in imwcut(&mi).unwrap().iter() {
            prop_assert!(is_minimal_multiway_cut(&mi.graph, &mi.terminals, z));
            prop_assert!(mi.matroid.is_independent(z).unwrap());
        }
    }
}
