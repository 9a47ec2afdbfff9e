use lew_core::experiment::{
    condition_samples, metric_accessor, run_sweep, ConditionSpec, ExperimentConfig, FINAL_WINDOW,
};
use lew_core::stats::welch_t_test;

fn probe(tag: &str, base: ExperimentConfig, runs: usize) {
    let nomale = ConditionSpec { id: "nomale_p033".into(), config: base.clone() };
    let male_cfg = ExperimentConfig {
        total_agents: base.total_agents + 1,
        male_present: true,
        p_male: 0.2,
        ..base.clone()
    };
    let male = ConditionSpec { id: "male_p033".into(), config: male_cfg };
    let results = run_sweep(&[nomale, male], runs, 11, 0, None).unwrap();
    let f1 = condition_samples(&results, metric_accessor("f1_implicit").unwrap(), FINAL_WINDOW);
    let lex = condition_samples(&results, metric_accessor("mean_agent_lexicon_size").unwrap(), FINAL_WINDOW);
    let mean = |xs: &Vec<f64>| xs.iter().sum::<f64>() / xs.len() as f64;
    let tf = welch_t_test(&f1["male_p033"], &f1["nomale_p033"]).unwrap();
    let tl = welch_t_test(&lex["male_p033"], &lex["nomale_p033"]).unwrap();
    println!("[{tag}] C2: f1 {:.4} -> {:.4} t={:+.2} p={:.3}   C4: lex {:.1} -> {:.1} t={:+.2}",
        mean(&f1["nomale_p033"]), mean(&f1["male_p033"]), tf.t, tf.p,
        mean(&lex["nomale_p033"]), mean(&lex["male_p033"]), tl.t);
}

fn main() {
    let runs = 150;
    let base = ExperimentConfig::default();
    let slow = ExperimentConfig { decay_lambda: 0.98, prune_epsilon: 0.05, ..base.clone() };
    let slower = ExperimentConfig { decay_lambda: 0.99, prune_epsilon: 0.02, ..base.clone() };
    probe("10+10 d2 slow hr-on", slow.clone(), runs);
    probe("4+4 d2 slow hr-on", ExperimentConfig { animates: 4, inanimates: 4, ..slow.clone() }, runs);
    probe("10+10 d2 slower hr-on", slower.clone(), runs);
    probe("4+4 d2 slower hr-on", ExperimentConfig { animates: 4, inanimates: 4, ..slower.clone() }, runs);
    probe("10+10 d2 slow hr-off", ExperimentConfig { hearer_reinforce_retrievals: false, ..slow.clone() }, runs);
    probe("4+4 d2 slow hr-off", ExperimentConfig { animates: 4, inanimates: 4, hearer_reinforce_retrievals: false, ..slow.clone() }, runs);
}
