use std::collections::HashSet;

use cosupp_core::dsl::{parse_program, run_program, CardLit, CfBody, CompLit, Decl, EntryLit, LocalizeAt, PrimeLit, RingExpr, RunOptions, Span};
use cosupp_core::engine::RULES;
use proptest::prelude::*;

const TOUR: &str = include_str!("../../../programs/tour.cos");
const README: &str = include_str!("../../../README.md");

fn var() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["x", "y", "z", "t"]).prop_map(str::to_string)
}

fn poly() -> impl Strategy<Value = String> {
    let atom = prop_oneof![var(), (1u32..20).prop_map(|n| n.to_string()), (var(), 2u32..5).prop_map(|(v, e)| format!("{v}^{e}"))];
    atom.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} + {b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} - {b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a}*{b}")),
            inner.clone().prop_map(|a| format!("-({a})")),
            (inner, 1u32..9).prop_map(|(a, d)| format!("({a})/{d}")),
        ]
    })
}

fn polys() -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec(poly(), 1..3)
}

fn vars() -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec(var(), 1..3)
}

fn ring_expr(prev: Vec<String>) -> impl Strategy<Value = RingExpr> {
    let mut leaves = vec![
        Just(RingExpr::Q).boxed(),
        Just(RingExpr::Z).boxed(),
        prop::sample::select(vec![2u64, 3, 5]).prop_map(RingExpr::Fp).boxed(),
        (prop::sample::select(vec!["countable", "uncountable"]), prop::option::of(Just(2u64)))
            .prop_map(|(c, ch)| RingExpr::Field { card: c.into(), characteristic: ch })
            .boxed(),
    ];
    if !prev.is_empty() {
        leaves.push(prop::sample::select(prev).prop_map(RingExpr::Ref).boxed());
    }
    prop::strategy::Union::new(leaves).prop_recursive(3, 8, 1, |inner| {
        prop_oneof![
            (inner.clone(), vars()).prop_map(|(b, v)| RingExpr::Poly(Box::new(b), v)),
            (inner.clone(), vars()).prop_map(|(b, v)| RingExpr::Series(Box::new(b), v)),
            (inner.clone(), polys()).prop_map(|(b, g)| RingExpr::Quot(Box::new(b), g)),
            (inner, polys()).prop_map(|(b, g)| RingExpr::Localize(Box::new(b), LocalizeAt::Gens(g))),
        ]
    })
}

fn comps() -> impl Strategy<Value = Vec<CompLit>> {
    let prime = prop_oneof![
        Just(PrimeLit::Ref("p0".into())),
        polys().prop_map(PrimeLit::Gens),
        prop::collection::vec(poly(), 0..2).prop_map(PrimeLit::Max),
    ];
    let card = prop_oneof![(0u64..5).prop_map(CardLit::Int), Just(CardLit::Inf), Just(CardLit::Sym("X".into()))];
    prop::collection::vec((prime, card).prop_map(|(prime, card)| CompLit { prime, card }), 0..3)
}

/// A program declaring `R0, R1`, a prime `p0`, and then a mix of the other
/// declaration forms and queries.
fn program_text() -> impl Strategy<Value = String> {
    (ring_expr(vec![]), ring_expr(vec!["R0".into()]), polys(), comps(), comps(), polys(), any::<bool>(), any::<bool>()).prop_map(
        |(r0, r1, pg, c0, c1, mat, semiflat, perfect)| {
            let decls = vec![
                Decl::Ring { name: "R0".into(), expr: r0 },
                Decl::Ring { name: "R1".into(), expr: r1 },
                Decl::Prime { name: "p0".into(), gens: pg.clone(), ring: "R1".into(), witness: None, irreducible: perfect },
                Decl::Map { name: "f".into(), source: "R0".into(), target: "R1".into(), images: pg.clone(), finite: semiflat },
                Decl::Module { name: "M".into(), ring: "R1".into(), matrix: vec![mat.clone(), mat], perfect },
                Decl::Cf { name: "T".into(), ring: "R1".into(), body: CfBody::Module(c0.clone()) },
                Decl::Cf {
                    name: "B".into(),
                    ring: "R1".into(),
                    body: CfBody::Complex {
                        degrees: vec![(-1, c0), (0, c1)],
                        entries: vec![EntryLit { degree: -1, from: 0, to: 0, tag: "nonzero_mod_p".into() }],
                        semiflat,
                        bounded: !semiflat,
                    },
                },
                Decl::Family { name: "P".into(), gens: pg, index: "n".into(), ring: "R1".into() },
            ];
            let mut s: String = decls.iter().map(|d| format!("{d}\n")).collect();
            s.push_str(
                "query cosupp_member R1 p0;\nquery cosupp_describe R0;\nquery cosupp_tensor M R1 perfect;\n\
                 query notclosed P 4 p0;\nquery cf_basechange T f;\nquery cf_primes B;\nquery gb R1 (x, y^2);\n",
            );
            s
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_then_parse_round_trips(src in program_text()) {
        let p = parse_program(&src).unwrap();
        let printed = p.to_string();
        let q = parse_program(&printed).unwrap();
        prop_assert!(p.same_structure(&q), "{}\n---\n{}", src, printed);
        prop_assert_eq!(q.to_string(), printed);
    }
}

#[test]
fn parse_errors_carry_locations() {
    let e = parse_program("ring R = Q[x];\nprime p = (x) in S;").unwrap_err();
    assert_eq!(e.span, Span { line: 2, col: 18 });
    let e = parse_program("ring R = Q[x];\nquery cf_primes R;").unwrap_err();
    assert!(e.msg.contains("expected a cf"), "{e}");
    let e = parse_program("ring R = Q[x];\nquery dim R R;").unwrap_err();
    assert!(e.msg.contains("too many"), "{e}");
}

#[test]
fn empty_program_reports_nothing() {
    let r = run_program(&parse_program("# nothing here\n").unwrap(), RunOptions::default());
    assert!(r.results.is_empty());
    assert_eq!(r.exit_code(), 0);
    assert_eq!(r.to_json()["schema"], "cosupp/1");
}

#[test]
fn reports_are_byte_identical() {
    let p = parse_program(TOUR).unwrap();
    let opts = RunOptions { trace: true, ..RunOptions::default() };
    let a = run_program(&p, opts.clone()).to_json_string();
    let b = run_program(&p, opts).to_json_string();
    assert_eq!(a, b);
}

#[test]
fn results_follow_program_order() {
    let p = parse_program(TOUR).unwrap();
    let r = run_program(&p, RunOptions::default());
    let kinds: Vec<String> = p.queries().map(|(q, _)| q.kind.clone()).collect();
    let got: Vec<String> = r.results.iter().map(|r| r.kind.clone()).collect();
    assert_eq!(kinds, got);
    assert!(r.results.iter().enumerate().all(|(i, r)| r.index == i));
}

#[test]
fn complete_local_example_program() {
    let src = "ring A = Q[[x,y]]; query cosupp_describe A;";
    let r = run_program(&parse_program(src).unwrap(), RunOptions::default());
    let set = &r.results[0].fields["set"];
    assert_eq!(set["kind"], "finite");
    assert_eq!(set["primes"], serde_json::json!(["(x, y)"]));
}

#[test]
fn undecidable_query_is_unknown_not_error() {
    let src = "ring U = field(uncountable)[x,y,z]; prime o = (0) in U; query cosupp_member U o;";
    let r = run_program(&parse_program(src).unwrap(), RunOptions::default());
    assert_eq!(r.results[0].status.name(), "unknown");
    assert!(r.results[0].fields["frontier"].as_array().is_some_and(|f| !f.is_empty()));
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn cotorsion_queries() {
    let src = "ring P = Q[x,y];\n\
               prime px = (x) in P;\n\
               prime m = (x, y) in P;\n\
               cf T = module in P [(0): 1, px: 2, m: inf];\n\
               query cf_lambda T px;\n\
               query cf_colocalize T px;\n\
               ring Pq = P / (x);\n\
               map pi : P -> Pq = [x, y];\n\
               query cf_basechange T pi;\n\
               query cf_minimal T;\n\
               query cf_primes T;\n";
    let r = run_program(&parse_program(src).unwrap(), RunOptions::default());
    assert_eq!(r.exit_code(), 0, "{}", r.to_text());
    let comps = |i: usize| r.results[i].fields["module"]["components"].as_array().unwrap().len();
    assert_eq!(comps(0), 2);
    assert_eq!(comps(1), 2);
    assert_eq!(comps(2), 2);
    assert_eq!(r.results[3].status.name(), "yes");
    assert_eq!(r.results[4].fields["equals_cosupport"], "yes");
}

#[test]
fn trace_anchors_match_the_rule_table() {
    let table: HashSet<(String, String)> = README
        .lines()
        .filter_map(|l| {
            let cells: Vec<&str> = l.split('|').map(str::trim).collect();
            (cells.len() >= 4 && cells[1].starts_with('`')).then(|| (cells[1].trim_matches('`').to_string(), cells[2].to_string()))
        })
        .collect();
    for (id, anchor) in RULES {
        assert!(table.contains(&(id.to_string(), anchor.to_string())), "rule {id} missing from the README table");
    }
    let p = parse_program(TOUR).unwrap();
    for assume in [false, true] {
        let mut opts = RunOptions { trace: true, ..RunOptions::default() };
        opts.engine.assume_gruson_jensen = assume;
        let r = run_program(&p, opts);
        let mut seen = 0;
        for res in &r.results {
            for s in res.fields.get("trace").and_then(|t| t.as_array()).into_iter().flatten() {
                let pair = (s["rule_id"].as_str().unwrap().to_string(), s["paper_anchor"].as_str().unwrap().to_string());
                assert!(table.contains(&pair), "{pair:?}");
                seen += 1;
            }
        }
        assert!(seen > 10);
    }
}

#[test]
fn declaration_failures_are_reported_once() {
    let src = "ring R = Q[x,y]; prime q = (x*y) in R witness (x, y); query cosupp_member R q; query dim R;";
    let r = run_program(&parse_program(src).unwrap(), RunOptions::default());
    assert_eq!(r.diagnostics.len(), 1);
    assert!(r.diagnostics[0].message.contains("prime 'q'"));
    assert_eq!(r.results[0].status.name(), "error");
    assert_eq!(r.results[1].status.name(), "ok");
}
