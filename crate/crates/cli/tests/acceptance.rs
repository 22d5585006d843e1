//! Acceptance suite: one PASS/FAIL line per criterion.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use heis_cli::json::Mode;
use heis_cli::verify::{self, run_check, CheckRecord, Config, Ctx, Suite};
use serde_json::Value;

const SEED: u64 = 42;
const EXACT_TRIALS: usize = 1000;
const BIN: &str = env!("CARGO_BIN_EXE_heis");

type Criterion = (&'static str, fn() -> Outcome, u64);

struct Outcome {
    ok: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self {
            ok: true,
            notes: Vec::new(),
        }
    }

    fn require(&mut self, cond: bool, note: impl FnOnce() -> String) {
        if !cond {
            self.ok = false;
            self.notes.push(note());
        }
    }

    /// Record passes, ran the expected number of instances and stayed within
    /// `limit` (zero for exact checks).
    fn check(&mut self, label: &str, r: &CheckRecord, instances: usize, limit: f64) {
        self.require(r.pass, || {
            format!("{label}: failed, counterexample {:?}", r.counterexample)
        });
        self.require(r.instances == instances, || {
            format!("{label}: {} instances, expected {instances}", r.instances)
        });
        self.require(r.max_defect <= limit, || {
            format!("{label}: max defect {:e} above {limit:e}", r.max_defect)
        });
        self.require(r.tolerance <= limit, || {
            format!("{label}: tolerance {:e} above {limit:e}", r.tolerance)
        });
    }
}

fn exact(suite: Suite, name: &str, n: usize, instances: usize, out: &mut Outcome) {
    let ctx = Ctx::new(n, EXACT_TRIALS, Mode::Exact);
    let r = run_check(suite, name, SEED, &ctx).unwrap_or_else(|| panic!("no check {name}"));
    assert_eq!(r.mode, Mode::Exact);
    out.check(&format!("{name} n={n}"), &r, instances, 0.0);
}

fn exact_algebra() -> Outcome {
    let mut out = Outcome::new();
    for n in 1..=4 {
        for name in ["rho_homomorphism", "bracket_isomorphism"] {
            exact(Suite::Group, name, n, EXACT_TRIALS, &mut out);
        }
        for name in [
            "l_operator_closed_form",
            "ghat_round_trip",
            "l_conjugation",
            "trace_pairing_vanishes",
            "normal_form_invariance",
            "reduction_normal_form",
        ] {
            exact(Suite::Cotype, name, n, EXACT_TRIALS, &mut out);
        }
    }
    out
}

fn adjoint() -> Outcome {
    let mut out = Outcome::new();
    for n in 1..=4 {
        let mut ctx = Ctx::new(n, EXACT_TRIALS, Mode::Float);
        ctx.tol = Some(1e-12);
        let r = run_check(Suite::Group, "ad_conjugation", SEED, &ctx).unwrap();
        out.check(
            &format!("float ad_conjugation n={n}"),
            &r,
            EXACT_TRIALS,
            1e-12,
        );
        for name in ["ad_conjugation", "coadjoint_duality", "mu_invariance"] {
            exact(Suite::Group, name, n, EXACT_TRIALS, &mut out);
        }
    }
    out
}

fn momentum() -> Outcome {
    let mut out = Outcome::new();
    for name in [
        "affine_cocycle",
        "affine_shift_identity",
        "heis_equivariance",
    ] {
        exact(
            Suite::Momentum,
            name,
            verify::DEFAULT_N,
            EXACT_TRIALS,
            &mut out,
        );
    }
    exact(
        Suite::Momentum,
        "momentum_image_modulus",
        verify::DEFAULT_N,
        100,
        &mut out,
    );
    out
}

fn classification() -> Outcome {
    let mut out = Outcome::new();
    for name in [
        "classify_normalizer",
        "isotropy_is_central",
        "orbit_form_scaling",
    ] {
        exact(Suite::Cotype, name, verify::DEFAULT_N, 500, &mut out);
    }
    out
}

fn quantization() -> Outcome {
    let mut out = Outcome::new();
    let report = verify::run(&Config::new(Suite::Quantization));
    let pinned: [(&str, f64); 12] = [
        ("commutator_analytic", 1e-10),
        ("commutator_grid", 1e-6),
        ("prequant_homomorphism", 1e-10),
        ("q_skew_hermitian", 1e-8),
        ("s_unitarity", 1e-8),
        ("s_homomorphism", 1e-12),
        ("s_homomorphism_grid", 1e-12),
        ("twisted_s1_is_s1", 1e-12),
        ("central_character", 1e-12),
        ("infinitesimal_defect", 1e-5),
        // 2 − observed order, so the order is at least 1.9
        ("infinitesimal_order", 0.1 + 1e-12),
        ("phase_only_closed_form", 1e-10),
    ];
    for (name, limit) in pinned {
        match report.checks.iter().find(|c| c.check == name) {
            Some(r) => {
                let instances = if name == "central_character" {
                    100
                } else {
                    verify::DEFAULT_QUANT_TRIALS
                };
                out.check(name, r, instances, limit);
            }
            None => out.require(false, || format!("{name}: missing from report")),
        }
    }
    out.require(report.pass, || "quantization report does not pass".into());
    out
}

fn run_bin(args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(BIN)
        .args(args)
        .env_remove("HEIS_MODE")
        .output()
        .unwrap();
    (out.status.code(), out.stdout)
}

fn cli_contract() -> Outcome {
    let mut out = Outcome::new();
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for name in [
        "classify_origin",
        "classify_fixed_point",
        "classify_generic",
        "reduce_example",
        "reduce_zero",
        "reduce_fraction",
    ] {
        let input = golden.join(format!("{name}.json"));
        let expected: Value = serde_json::from_str(
            &std::fs::read_to_string(golden.join(format!("{name}.expected.json"))).unwrap(),
        )
        .unwrap();
        let command = name.split('_').next().unwrap();
        let (code, stdout) = run_bin(&[command, "--input", input.to_str().unwrap()]);
        let actual: Option<Value> = serde_json::from_slice(&stdout).ok();
        out.require(
            code == Some(0) && actual.as_ref() == Some(&expected),
            || format!("golden {name} differs"),
        );
    }

    let args = ["verify", "--suite", "all", "--trials", "10", "--seed", "9"];
    let strip = |bytes: Vec<u8>| {
        let mut v: Value = serde_json::from_slice(&bytes).unwrap();
        v.as_object_mut().unwrap().remove("wall_time_ms");
        serde_json::to_string(&v).unwrap()
    };
    let (c1, a) = run_bin(&args);
    let (c2, b) = run_bin(&args);
    out.require(c1 == Some(0) && c2 == Some(0), || {
        format!("verify exit codes {c1:?} {c2:?}")
    });
    out.require(strip(a) == strip(b), || {
        "verify reports differ under a fixed seed".into()
    });

    let (code, _) = run_bin(&[
        "verify",
        "--suite",
        "quantization",
        "--trials",
        "1",
        "--tol",
        "0",
    ]);
    out.require(code == Some(1), || {
        format!("failing verify exited {code:?}")
    });
    let (code, _) = run_bin(&["verify", "--suite", "bogus"]);
    out.require(code == Some(2), || format!("unknown suite exited {code:?}"));
    let missing = golden.join("does_not_exist.json");
    let (code, _) = run_bin(&["classify", "--input", missing.to_str().unwrap()]);
    out.require(code == Some(2), || format!("missing input exited {code:?}"));
    out
}

fn main() {
    let criteria: [Criterion; 6] = [
        (
            "exact algebra identities, n = 1..4, 1000 rational instances",
            exact_algebra,
            10,
        ),
        ("adjoint and coadjoint, float 1e-12 and exact", adjoint, 5),
        ("momentum maps, exact", momentum, 5),
        ("orbit classification, 500 duals", classification, 5),
        ("quantization, grid 2048 on [-8, 8]", quantization, 30),
        ("command-line contract", cli_contract, 5),
    ];
    let total = Instant::now();
    let mut all = true;
    for (i, (label, run, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        outcome.require(elapsed <= Duration::from_secs(budget), || {
            format!("took {:.2}s, budget {budget}s", elapsed.as_secs_f64())
        });
        let verdict = if outcome.ok { "PASS" } else { "FAIL" };
        println!(
            "{verdict} criterion {}: {label} ({:.2}s)",
            i + 1,
            elapsed.as_secs_f64()
        );
        for note in &outcome.notes {
            println!("    {note}");
        }
        all &= outcome.ok;
    }
    let elapsed = total.elapsed();
    let in_budget = elapsed <= Duration::from_secs(60);
    println!(
        "{} total runtime {:.2}s (budget 60s)",
        if in_budget { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    if !(all && in_budget) {
        std::process::exit(1);
    }
}
