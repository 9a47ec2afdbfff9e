use lew_core::experiment::{
    condition_samples, metric_accessor, paper_conditions, run_sweep, ExperimentConfig, FINAL_WINDOW,
};
use lew_core::stats::welch_t_test;

fn eval(tag: &str, base: ExperimentConfig, runs: usize) {
    let conditions = paper_conditions(&base);
    let results = run_sweep(&conditions, runs, 42, 0, None).unwrap();
    let get = |m: &str| condition_samples(&results, metric_accessor(m).unwrap(), FINAL_WINDOW);
    let f1 = get("f1_implicit");
    let lex = get("mean_agent_lexicon_size");
    let msize = get("male_lexicon_size");
    let syn = get("mean_agent_synonymy");
    let hom = get("mean_agent_homonymy");
    let ghom = get("global_homonymy");
    let gsyn = get("global_synonymy");

    let mean = |xs: &Vec<f64>| xs.iter().sum::<f64>() / xs.len() as f64;
    let ids = ["nomale_p000", "nomale_p033", "nomale_p050", "nomale_p080", "nomale_p100"];
    let f1s: Vec<f64> = ids.iter().map(|id| mean(&f1[*id])).collect();
    let mono = f1s.windows(2).all(|w| w[1] > w[0]);
    let t = |a: &Vec<f64>, b: &Vec<f64>| welch_t_test(a, b).unwrap().t;

    // C3 across all male conditions (weakest one matters)
    let c3_min = ["male_p000", "male_p033", "male_p050", "male_p080", "male_p100"]
        .iter()
        .map(|id| t(&msize[*id], &lex[*id]))
        .fold(f64::INFINITY, f64::min);
    // pooled C4 over matched levels
    let pool = |map: &indexmap::IndexMap<String, Vec<f64>>, prefix: &str| -> Vec<f64> {
        ["p000", "p033", "p050", "p080", "p100"]
            .iter()
            .flat_map(|lvl| map[&format!("{prefix}_{lvl}")].clone())
            .collect()
    };
    let c4_pooled = t(&pool(&lex, "male"), &pool(&lex, "nomale"));
    // C7: at least one adjacent global-synonymy comparison with p > 0.05
    let c7 = ids
        .windows(2)
        .map(|w| welch_t_test(&gsyn[w[1]], &gsyn[w[0]]).unwrap().p)
        .fold(f64::NEG_INFINITY, f64::max);

    println!(
        "[{tag}] mono={mono} f1={:?}",
        f1s.iter().map(|v| (v * 100.0).round() / 100.0).collect::<Vec<_>>()
    );
    println!(
        "  C1={:+.1} C2={:+.1} C3min={:+.1} C4={:+.1}(pool {c4_pooled:+.1}) C5a={:+.1} C5b={:+.1} C6lex={:+.1} C6syn={:+.1} C7maxp={:.2}",
        t(&f1["nomale_p100"], &f1["nomale_p000"]),
        t(&f1["male_p033"], &f1["nomale_p033"]),
        c3_min,
        t(&lex["male_p033"], &lex["nomale_p033"]),
        t(&hom["nomale_p100"], &hom["nomale_p033"]),
        t(&ghom["nomale_p100"], &ghom["nomale_p033"]),
        t(&lex["nomale_p100"], &lex["nomale_p033"]),
        t(&syn["nomale_p100"], &syn["nomale_p033"]),
        c7
    );
}

fn main() {
    let runs: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(150);
    let base = ExperimentConfig::default();
    let w = |a: usize, d: u32, l: f64, e: f64, hr: bool| ExperimentConfig {
        animates: a,
        inanimates: a,
        max_depth: d,
        decay_lambda: l,
        prune_epsilon: e,
        hearer_reinforce_retrievals: hr,
        ..base.clone()
    };
    let b = |mut c: ExperimentConfig, v: f64| { c.boundary_prob = v; c };
    let z = |mut c: ExperimentConfig, v: f64| { c.zipf_s = v; c };
    let _ = z;
    let we = |a: usize, i: usize, d: u32, l: f64, e: f64| ExperimentConfig {
        animates: a, inanimates: i, max_depth: d, decay_lambda: l, prune_epsilon: e,
        hearer_reinforce_retrievals: false, ..base.clone()
    };
    eval("Z16 1+1 d2 l.995 b0.75", b(we(1, 1, 2, 0.995, 0.01), 0.75), runs);
    eval("Z17 1+1 d2 l.995 b0.8", b(we(1, 1, 2, 0.995, 0.01), 0.8), runs);
    eval("Z18 1+1 d1 l.995 b0.7", b(we(1, 1, 1, 0.995, 0.01), 0.7), runs);
    eval("Z19 1+1 d3 l.995 b0.7", b(we(1, 1, 3, 0.995, 0.01), 0.7), runs);
}
