use proptest::prelude::*;

use revsynth::io::{format_circuit, parse_circuit};
use revsynth::optimizer::{
    apply_templates, builtin_templates, gates_commute, merge_adjacent, remove_useless_pairs, trim_controls,
};
use revsynth::simulator::equivalent;
use revsynth::synthesis::{reduce_controls, sort_network_trace, swap_gate, SortState};
use revsynth::{
    optimize, realized_spec, realizes, BitString, Circuit, Method, OptimizeConfig, ReversibleSpec, Side, SplitMix64,
    SynthesisOptions, TieRule, ToffoliGate,
};

fn gate_in(w: usize) -> impl Strategy<Value = ToffoliGate> {
    (0..w, 0u32..(1 << w), 0u32..(1 << w)).prop_map(move |(t, a, b)| {
        let free = !(1u32 << t) & ((1 << w) - 1);
        let pos = a & free & b;
        let neg = !a & free & b;
        ToffoliGate::from_masks(w, t, pos, neg).unwrap()
    })
}

fn circuit_in(w: usize, max_len: usize) -> impl Strategy<Value = Circuit> {
    proptest::collection::vec(gate_in(w), 0..=max_len).prop_map(move |g| Circuit::new(w, g).unwrap())
}

fn circuit() -> impl Strategy<Value = Circuit> {
    (2usize..=5).prop_flat_map(|w| circuit_in(w, 14))
}

fn spec() -> impl Strategy<Value = ReversibleSpec> {
    (2usize..=5, any::<u64>())
        .prop_map(|(w, seed)| ReversibleSpec::new(w, SplitMix64::new(seed).permutation(1 << w)).unwrap())
}

fn options() -> impl Strategy<Value = SynthesisOptions> {
    let method = prop_oneof![
        Just(Method::Bsssn),
        Just(Method::Variant),
        any::<u64>().prop_map(|seed| Method::Random { seed }),
    ];
    let tie = prop_oneof![
        Just(TieRule::LowestValue),
        Just(TieRule::HighestValue),
        Just(TieRule::PreferMisplacedThenLowest),
        Just(TieRule::MostSignificantLine),
    ];
    let side = prop_oneof![Just(Side::Output), Just(Side::Input)];
    (method, tie, side, any::<bool>()).prop_map(|(m, t, s, r)| {
        SynthesisOptions::default()
            .with_method(m)
            .with_tie_rule(t)
            .with_side(s)
            .with_reduce_controls(r)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn commuting_gates_swap_freely(
        (g, h) in (2usize..=6).prop_flat_map(|w| (gate_in(w), gate_in(w)))
    ) {
        if gates_commute(&g, &h).unwrap() {
            let w = g.width();
            let gh = Circuit::new(w, vec![g, h]).unwrap();
            let hg = Circuit::new(w, vec![h, g]).unwrap();
            prop_assert!(equivalent(&gh, &hg).unwrap());
        }
    }

    #[test]
    fn merged_gate_is_equivalent(
        (g, h) in (2usize..=6).prop_flat_map(|w| (gate_in(w), gate_in(w)))
    ) {
        if let Some(m) = merge_adjacent(&g, &h) {
            let w = g.width();
            let pair = Circuit::new(w, vec![g, h]).unwrap();
            let one = Circuit::new(w, vec![m]).unwrap();
            prop_assert!(equivalent(&pair, &one).unwrap());
        }
    }

    #[test]
    fn passes_preserve_function(c in circuit()) {
        let before = realized_spec(&c).unwrap();
        for out in [
            remove_useless_pairs(&c),
            apply_templates(&c, &builtin_templates(), 8),
            trim_controls(&c),
            optimize(&c, &OptimizeConfig::default()),
        ] {
            prop_assert!(out.len() <= c.len());
            prop_assert_eq!(realized_spec(&out).unwrap(), before.clone());
        }
    }

    #[test]
    fn optimize_reaches_a_fixed_point(c in circuit()) {
        let config = OptimizeConfig::default();
        let once = optimize(&c, &config);
        prop_assert_eq!(optimize(&once, &config), once);
    }

    #[test]
    fn synthesis_realizes_every_option_set(s in spec(), opts in options()) {
        let c = revsynth::synthesize(&s, &opts).unwrap();
        prop_assert!(realizes(&c, &s).unwrap());
        let again = revsynth::synthesize(&s, &opts).unwrap();
        prop_assert_eq!(again, c);
    }

    #[test]
    fn reduced_gates_never_disturb_placed_strings(s in spec(), opts in options()) {
        let opts = opts.with_reduce_controls(false);
        let mut state = SortState::new(&s);
        for step in sort_network_trace(&s, &opts).unwrap() {
            let reduced = reduce_controls(&step.gate, &state);
            prop_assert!(reduced.control_count() <= step.gate.control_count());
            for v in 0..s.len() as u32 {
                if state.is_placed(v) && !step.gate.fires(v) {
                    prop_assert_eq!(reduced.apply_value(v), v);
                }
            }
            state.apply(&step.gate);
        }
        prop_assert!(state.is_sorted());
    }

    #[test]
    fn swap_gates_exchange_only_their_pair(w in 1usize..=8, p in any::<u32>(), line in any::<usize>()) {
        let p = p & ((1 << w) - 1);
        let q = p ^ (1 << (line % w));
        let g = swap_gate(
            BitString::from_int(p as u64, w).unwrap(),
            BitString::from_int(q as u64, w).unwrap(),
        )
        .unwrap();
        for x in 0..1u32 << w {
            let want = if x == p { q } else if x == q { p } else { x };
            prop_assert_eq!(g.apply_value(x), want);
        }
    }

    #[test]
    fn circuit_text_round_trips(c in circuit()) {
        prop_assert_eq!(parse_circuit(&format_circuit(&c)).unwrap(), c);
    }
}

#[test]
fn mixed_notation_listings_parse() {
    let listings = [
        "T(b',c':a) T(b,c':a) T(a,c:b) T(b,c:a) T(a',c:b)",
        "T(b',c':a) T(b,c':a) T(b',c:a) T(a,c:b) T(b,c:a)",
        "T(b',c':a) T(b,c':a) T(b,c:a) T(a,c:b) T(b',c:a)",
        "T(a:b)T(b,c:a)T(a:b)",
        "T(b:a)T(a,c:b)T(b:a)",
        "T(a,b:c)T(a,c:b)T(b',c:a)T(a,c:b)T(a,b:c)",
        "T(a',b':c)T(b',c':a)T(a,c':b)T(b', c':a)T(a',b':c)",
        "T(a,b:c)T(a:b)T(a)",
        "T(a,b:c)T(a:c)T(a,b:c)",
        "T(b,c;a)",
        "T(:d)T(a,b,d:c) T(a,d:c) T(a,b,d:c) T(b,d:c) T(:d)T(a,b,c;d)T(a,b;d)T(a,b,d:c)T(a,d:c)\
         T(a,b,c;d)T(a,c;d)T(a,b,d;c)T(b,d;c)T(a,b,c;d)T(b,c;d)T(a,b,c;d)",
        "T(:d) T(a,d:c) T(b,d:c) T(:d) T(a,b,c;d) T(a,b;d)T(a,b,d;c) T(a,d:c)T(a,b,c;d)T(a,c;d)\
         T(a,b,d;c)T(b,d;c)T(b,c;d)",
        "T(a,b;d)T(a;b)T(b,c;d)T(b;c)",
    ];
    for text in listings {
        let c = parse_circuit(text).unwrap_or_else(|e| panic!("{text}: {e}"));
        assert!(!c.is_empty());
    }
}
