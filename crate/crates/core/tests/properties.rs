use proptest::prelude::*;

use qdisynth::analysis::{orphan_summary, DEFAULT_ANALYSIS_CAP};
use qdisynth::logic::{dual_rail_cover, eval_cover_pair, BooleanFunction, Codeword, RailLiteral, Rails, VarSet};
use qdisynth::netlist::Netlist;
use qdisynth::sim::{apply_partial, simulate_transaction, Phase};
use qdisynth::synth::{fdims_factorize, synth, synthesize, Method, SynthOptions};

fn function(max_n: usize) -> impl Strategy<Value = BooleanFunction> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), 1 << n)
            .prop_map(move |bits| BooleanFunction::from_truth_table(n, bits).unwrap())
    })
}

fn non_constant(max_n: usize) -> impl Strategy<Value = BooleanFunction> {
    function(max_n).prop_filter("constant", |f| !f.is_constant())
}

fn method() -> impl Strategy<Value = Method> {
    prop_oneof![Just(Method::Dims), Just(Method::Fdims), Just(Method::Safe)]
}

proptest! {
    #[test]
    fn covers_partition_the_codewords(f in function(4)) {
        let c = dual_rail_cover(&f);
        prop_assert_eq!(c.f1.len() + c.f0.len(), 1 << f.n());
        prop_assert!(c.f1.is_disjoint() && c.f0.is_disjoint());
        for cw in Codeword::all(f.n()) {
            let hits = c.f1.terms().iter().chain(c.f0.terms()).filter(|t| t.is_satisfied(&cw.rails())).count();
            prop_assert_eq!(hits, 1);
            let (r1, r0) = eval_cover_pair(&c.f1, &c.f0, &cw.rails()).unwrap();
            let want = f.bits()[cw.assignment() as usize];
            prop_assert_eq!((r1, r0), (want, !want));
        }
        prop_assert_eq!(eval_cover_pair(&c.f1, &c.f0, &Rails::spacer(f.n())).unwrap(), (false, false));
    }

    #[test]
    fn truth_table_text_round_trips(f in function(6)) {
        prop_assert_eq!(BooleanFunction::parse_text(&f.to_text()).unwrap(), f);
    }

    #[test]
    fn factored_forms_are_positive_unate(f in non_constant(4), seed in any::<u64>(), raise in any::<prop::sample::Index>()) {
        let c = dual_rail_cover(&f);
        let e = fdims_factorize(&c.f0).unwrap();
        let n = f.n();
        let mut rails = Rails::spacer(n);
        // arbitrary rail vector, both rails of a variable allowed
        for i in 0..2 * n {
            if seed >> i & 1 == 1 {
                rails.set(RailLiteral::new(i / 2 + 1, i % 2 == 1), true);
            }
        }
        let before = e.eval(&rails);
        let i = raise.index(2 * n);
        rails.set(RailLiteral::new(i / 2 + 1, i % 2 == 1), true);
        prop_assert!(!before || e.eval(&rails));
    }

    #[test]
    fn output_rises_under_every_superset(f in non_constant(4), m in method(), cw_seed in any::<u32>(), s in any::<u32>(), extra in any::<u32>()) {
        let n = f.n();
        let c = synth(&f, m, &SynthOptions::default()).unwrap().validate().unwrap();
        let cw = Codeword::new(n, cw_seed & ((1 << n) - 1));
        let small = VarSet::from_mask(s & ((1 << n) - 1));
        let large = VarSet::from_mask((s | extra) & ((1 << n) - 1));
        let a = apply_partial(&c, &cw, small).unwrap();
        let b = apply_partial(&c, &cw, large).unwrap();
        for &(r1, r0) in c.outputs() {
            prop_assert!(!a.values[r1] || b.values[r1]);
            prop_assert!(!a.values[r0] || b.values[r0]);
        }
    }

    #[test]
    fn simulation_is_deterministic(f in non_constant(4), m in method()) {
        let c = synth(&f, m, &SynthOptions::default()).unwrap().validate().unwrap();
        for cw in Codeword::all(f.n()) {
            let a = simulate_transaction(&c, &cw.rails()).unwrap();
            let b = simulate_transaction(&c, &cw.rails()).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert!(a.is_rtz_complete());
        }
    }

    #[test]
    fn netlist_json_round_trips(f in non_constant(4), m in method(), fanin in proptest::option::of(2usize..5)) {
        let nl = synth(&f, m, &SynthOptions { or_fanin: fanin, ..Default::default() }).unwrap();
        let text = nl.to_json();
        let back = Netlist::from_json(&text).unwrap();
        prop_assert_eq!(&back, &nl);
        prop_assert_eq!(back.to_json(), text);
    }

    #[test]
    fn orphan_rows_invariant_under_or_fanin(f in non_constant(4), m in method(), fanin in 2usize..5) {
        let wide = synth(&f, m, &SynthOptions::default()).unwrap().validate().unwrap();
        let tree = synth(&f, m, &SynthOptions { or_fanin: Some(fanin), ..Default::default() })
            .unwrap()
            .validate()
            .unwrap();
        let a = orphan_summary(&wide, DEFAULT_ANALYSIS_CAP).unwrap();
        let b = orphan_summary(&tree, DEFAULT_ANALYSIS_CAP).unwrap();
        for phase in [Phase::Set, Phase::Reset] {
            let ea: Vec<bool> = a.rows.iter().map(|r| r.phase(phase).is_clean()).collect();
            let eb: Vec<bool> = b.rows.iter().map(|r| r.phase(phase).is_clean()).collect();
            prop_assert_eq!(ea, eb);
        }
    }

    #[test]
    fn expression_forms_match_the_function(f in non_constant(4), m in prop_oneof![Just(Method::Fdims), Just(Method::Safe)]) {
        let s = synthesize(&f, m, &SynthOptions::default()).unwrap();
        let (e1, e0) = s.exprs.expect("factored methods keep their expressions");
        for cw in Codeword::all(f.n()) {
            let want = f.bits()[cw.assignment() as usize];
            prop_assert_eq!((e1.eval(&cw.rails()), e0.eval(&cw.rails())), (want, !want));
        }
    }
}
