//! Plain-text output.

use std::fmt::Write;

use ecic::bounds::{BoundReport, CodeTableEntry};
use ecic::ecic::{CertificateEnvelope, MinRankWitness, RandomReport, VerificationReport};
use ecic::galois::matrix_to_text;
use ecic::harness::CampaignStats;
use ecic::static_ecic::StaticReport;

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "unknown".into(), |x| x.to_string())
}

pub fn verification(r: &VerificationReport) -> String {
    let mut s = format!(
        "{}: min weight {} (need {}), {:?}, {} vectors inspected\n",
        if r.ok { "ok" } else { "fails" },
        r.min_weight,
        2 * r.delta + 1,
        r.method,
        r.cost
    );
    if let Some(z) = &r.witness {
        writeln!(s, "witness z = {z:?}").unwrap();
    }
    s
}

pub fn min_rank(w: &MinRankWitness) -> String {
    let mut s =
        format!("kappa = {}{}\nnodes = {}\n", w.kappa, if w.certified { "" } else { " (upper bound)" }, w.nodes);
    s.push_str("L_opt:\n");
    s.push_str(&matrix_to_text(&w.l_opt));
    s
}

pub fn code_entry(e: &CodeTableEntry) -> String {
    let mut s = match e.n {
        Some(n) => format!("N_{}[{}, {}] = {} ({:?})\n", e.q, e.k, e.d, n, e.provenance),
        None => format!("N_{}[{}, {}] in [{}, {}]\n", e.q, e.k, e.d, e.lower, e.upper),
    };
    if let Some((n, nodes)) = e.refutation {
        writeln!(s, "length {n} refuted in {nodes} nodes").unwrap();
    }
    s
}

fn entry_value(e: &Option<CodeTableEntry>) -> String {
    match e {
        Some(CodeTableEntry { n: Some(n), .. }) => n.to_string(),
        Some(e) => format!("[{}, {}]", e.lower, e.upper),
        None => "unknown".into(),
    }
}

pub fn bounds(r: &BoundReport) -> String {
    let mut s = String::new();
    writeln!(s, "q = {}, delta = {}", r.q, r.delta).unwrap();
    writeln!(s, "alpha = {}", opt(r.alpha)).unwrap();
    writeln!(s, "kappa = {}{}", opt(r.kappa), if r.kappa_certified { "" } else { " (uncertified)" }).unwrap();
    writeln!(s, "chromatic bound = {}", opt(r.chromatic)).unwrap();
    writeln!(s, "lower (alpha) = {}", entry_value(&r.alpha_bound)).unwrap();
    writeln!(s, "lower (singleton) = {}", opt(r.singleton)).unwrap();
    writeln!(s, "upper (kappa) = {}", entry_value(&r.kappa_bound)).unwrap();
    writeln!(s, "upper (random) = {}", r.random_n).unwrap();
    if let Some(n) = r.mds_exact {
        writeln!(s, "exact (mds) = {n}").unwrap();
    }
    s
}

pub fn static_report(r: &StaticReport) -> String {
    let mut s = String::new();
    writeln!(s, "n = {}, rho = {}, delta = {}, q = {}", r.n, r.rho, r.delta, r.q).unwrap();
    match r.rho_star.value {
        Some(v) => writeln!(s, "rho* = {v} ({:?})", r.rho_star.provenance).unwrap(),
        None => writeln!(s, "rho* in [{}, {}]", r.rho_star.lower, r.rho_star.upper).unwrap(),
    }
    writeln!(s, "lower (alpha) = {}", entry_value(&r.lower_alpha)).unwrap();
    writeln!(s, "lower (singleton) = {}", opt(r.lower_singleton)).unwrap();
    writeln!(s, "upper = {}", entry_value(&r.upper)).unwrap();
    if let Some(n) = r.exact {
        writeln!(s, "exact = {n}").unwrap();
    }
    s
}

pub fn campaign(c: &CampaignStats) -> String {
    format!(
        "{}/{} trials decoded at every receiver ({:.4})\nmax error weight = {}\nper-receiver failures = {:?}\ndecoder errors = {}\n",
        c.successes,
        c.trials,
        c.success_rate(),
        c.max_weight,
        c.receiver_failures,
        c.decode_errors
    )
}

pub fn envelope(e: &CertificateEnvelope) -> String {
    format!(
        "# N = {}, delta = {}, method = {}, certified = {}\n# instance {}\n",
        e.n, e.delta, e.method, e.certified, e.instance_hash
    )
}

pub fn random_failure(r: &RandomReport) -> String {
    let mut s = format!("no matrix of length {} verified in {} attempts\n", r.n, r.attempts);
    if !r.condition_holds {
        writeln!(s, "the random-coding condition first holds at length {}", r.condition_length).unwrap();
    }
    if let Some(b) = r.singleton {
        if r.n < b {
            writeln!(s, "no code shorter than {b} exists").unwrap();
        }
    }
    s
}
