use lew_core::experiment::{
    condition_samples, metric_accessor, run_sweep, ConditionSpec, ExperimentConfig, FINAL_WINDOW,
};
use lew_core::stats::welch_t_test;

fn scan(tag: &str, base: ExperimentConfig, runs: usize) {
    let mut conditions = Vec::new();
    for p in [0.0, 1.0 / 3.0, 0.5, 0.8, 1.0] {
        let mut c = base.clone();
        c.p_intra = p;
        conditions.push(ConditionSpec { id: c.condition_label(), config: c });
    }
    let mut m = base.clone();
    m.p_intra = 1.0 / 3.0;
    m.male_present = true;
    m.p_male = 0.2;
    m.total_agents = base.total_agents + 1;
    conditions.push(ConditionSpec { id: m.condition_label(), config: m });

    let results = run_sweep(&conditions, runs, 42, 0, None).unwrap();
    let get = |metric: &str| condition_samples(&results, metric_accessor(metric).unwrap(), FINAL_WINDOW);

    let f1 = get("f1_implicit");
    let lex = get("mean_agent_lexicon_size");
    let msize = get("male_lexicon_size");
    let syn = get("mean_agent_synonymy");
    let hom = get("mean_agent_homonymy");
    let ghom = get("global_homonymy");

    let mean = |xs: &Vec<f64>| xs.iter().sum::<f64>() / xs.len() as f64;
    let ids = ["nomale_p000","nomale_p033","nomale_p050","nomale_p080","nomale_p100"];
    let f1s: Vec<f64> = ids.iter().map(|id| mean(&f1[*id])).collect();
    let monotone = f1s.windows(2).all(|w| w[1] > w[0]);
    let adj: Vec<f64> = ids.windows(2).map(|w| welch_t_test(&f1[w[1]], &f1[w[0]]).unwrap().t).collect();

    let t = |a: &Vec<f64>, b: &Vec<f64>| welch_t_test(a, b).unwrap().t;
    println!("[{tag}] f1 {:?} mono={monotone} adj={:?}",
        f1s.iter().map(|v| (v * 100.0).round() / 100.0).collect::<Vec<_>>(),
        adj.iter().map(|v| (v * 10.0).round() / 10.0).collect::<Vec<_>>());
    println!("  C1={:+.1} C2={:+.1} C3={:+.1} C4={:+.1} C6lex={:+.1} C6syn={:+.1} C5a={:+.1} C5b={:+.1}",
        t(&f1["nomale_p100"], &f1["nomale_p000"]),
        t(&f1["male_p033"], &f1["nomale_p033"]),
        t(&msize["male_p033"], &lex["male_p033"]),
        t(&lex["male_p033"], &lex["nomale_p033"]),
        t(&lex["nomale_p100"], &lex["nomale_p033"]),
        t(&syn["nomale_p100"], &syn["nomale_p033"]),
        t(&hom["nomale_p100"], &hom["nomale_p033"]),
        t(&ghom["nomale_p100"], &ghom["nomale_p033"]));
}

fn main() {
    let runs: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(150);
    let base = ExperimentConfig::default();
    let d1 = |a: usize, i: usize| ExperimentConfig { animates: a, inanimates: i, max_depth: 1, ..base.clone() };
    scan("ent2+2 d1", d1(2, 2), runs);
    scan("ent2+2 d1 fastdecay", ExperimentConfig { decay_lambda: 0.9, prune_epsilon: 0.2, ..d1(2, 2) }, runs);
    scan("ent3+3 d1", d1(3, 3), runs);
    scan("ent4+4 d1", d1(4, 4), runs);
    scan("ent2+2 d1 z1.2", ExperimentConfig { zipf_s: 1.2, ..d1(2, 2) }, runs);
}
