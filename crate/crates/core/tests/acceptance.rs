//! One PASS/FAIL line per acceptance criterion, full-scale ranges.
//!
//! Criteria 11 and 12 quote statements with counterexamples. Those lines
//! print FAIL; the run only errors if they fail for any other reason, or
//! if the repaired readings do not hold.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use fqmzv::compose::{matrix_class, valid_matrices, Limits, TauSequence};
use fqmzv::digitlab::{gamma, PrimePower};
use fqmzv::fqpoly::{make_field, RationalFn};
use fqmzv::mzv::{zeta_mixed, MixedOptions};
use fqmzv::powersum::{power_sum_bruteforce, power_sum_formula};
use fqmzv::verify::{self, Outcome, Ranges};

#[derive(PartialEq)]
enum Status {
    Pass,
    /// Fails as documented: the literal statement has counterexamples.
    KnownFail,
    Fail,
}

struct Line {
    number: u32,
    title: &'static str,
    status: Status,
    elapsed: Duration,
    budget: Option<Duration>,
    detail: String,
}

fn find<'a>(outcomes: &'a [Outcome], name: &str) -> &'a Outcome {
    outcomes
        .iter()
        .find(|o| o.name == name)
        .unwrap_or_else(|| panic!("no outcome named {name}"))
}

fn from_outcomes(outs: &[&Outcome]) -> (Status, String) {
    let failed: Vec<&&Outcome> = outs.iter().filter(|o| !o.passed).collect();
    let checked: u64 = outs.iter().map(|o| o.checked).sum();
    if failed.is_empty() {
        (Status::Pass, format!("{checked} checked"))
    } else {
        let d = failed
            .iter()
            .map(|o| format!("{}: {}", o.name, o.detail))
            .collect::<Vec<_>>()
            .join("; ");
        (Status::Fail, d)
    }
}

/// `literal` must fail while every outcome in `repaired` passes.
fn known_counterexample(literal: &Outcome, repaired: &[&Outcome]) -> (Status, String) {
    let (rest, rest_detail) = from_outcomes(repaired);
    if rest != Status::Pass {
        return (Status::Fail, rest_detail);
    }
    if literal.passed {
        return (Status::Fail, format!("{} unexpectedly passed", literal.name));
    }
    (
        Status::KnownFail,
        format!(
            "{}: {}; repaired readings pass ({rest_detail})",
            literal.name, literal.detail
        ),
    )
}

fn remark() -> (Status, String) {
    let run = || -> fqmzv::Result<Vec<(bool, String)>> {
        let field = make_field(3, 1)?;
        let limits = Limits::default();
        let s1 = power_sum_formula(&field, 1, -8, &limits)?.value;
        let s2 = power_sum_formula(&field, 2, -8, &limits)?.value;
        let s1_pos = power_sum_bruteforce(&field, 1, 2, 1_000)?.value.to_rational();
        let product = s2.to_rational().mul(&s1_pos);
        let z = zeta_mixed(&field, &[-8, 2], &MixedOptions::default(), &limits)?;
        Ok(vec![
            (s1.to_string() == "2*t^6+2*t^4+2*t^2+2", format!("S_1(-8) = {s1}")),
            (s2.to_string() == "t^6+t^4+t^2", format!("S_2(-8) = {s2}")),
            (product == RationalFn::one(&field), format!("S_2(-8)S_1(2) = {product}")),
            (z.value.is_zero() && z.exact, format!("zeta(-8,2) = {}", z.value)),
        ])
    };
    match run() {
        Ok(checks) => {
            let bad: Vec<String> = checks.into_iter().filter(|c| !c.0).map(|c| c.1).collect();
            if bad.is_empty() {
                (Status::Pass, "4 identities".into())
            } else {
                (Status::Fail, bad.join("; "))
            }
        }
        Err(e) => (Status::Fail, e.to_string()),
    }
}

fn example_131() -> (Status, String) {
    let run = || -> fqmzv::Result<Vec<(bool, String)>> {
        let q = PrimePower::from_q(9)?;
        let g = gamma(131, &q)?;
        let ms = valid_matrices(131, 2, &q, &Limits::default())?;
        let mut shown: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
        shown.sort();
        let first = ms.iter().find(|m| m.to_string() == "[[5,0],[1,1]]");
        let class: Vec<Vec<u64>> = first
            .map(|m| matrix_class(m).iter().map(|c| c.parts().to_vec()).collect())
            .unwrap_or_default();
        let tau = TauSequence::new(131, &q);
        Ok(vec![
            (g.entries() == [5, 2], format!("gamma(131) = {g}")),
            (
                shown == ["[[2,3],[2,0]]", "[[5,0],[1,1]]"],
                format!("matrices {shown:?}"),
            ),
            (
                class.contains(&vec![128, 3]) && class.contains(&vec![104, 27]),
                format!("class of first matrix {class:?}"),
            ),
            (tau.class(0) == [4, 2, 2, 0, 0], format!("tau_0 exponents {:?}", tau.class(0))),
            (tau.class(1) == [3, 1], format!("tau_1 exponents {:?}", tau.class(1))),
        ])
    };
    match run() {
        Ok(checks) => {
            let bad: Vec<String> = checks.into_iter().filter(|c| !c.0).map(|c| c.1).collect();
            if bad.is_empty() {
                (Status::Pass, "gamma, 2 matrices, class, tau".into())
            } else {
                (Status::Fail, bad.join("; "))
            }
        }
        Err(e) => (Status::Fail, e.to_string()),
    }
}

fn main() -> ExitCode {
    let ranges = Ranges::default();
    let mut lines = Vec::new();
    let mut push = |number, title, budget: Option<u64>, start: Instant, (status, detail)| {
        lines.push(Line {
            number,
            title,
            status,
            elapsed: start.elapsed(),
            budget: budget.map(Duration::from_secs),
            detail,
        });
    };

    let t = Instant::now();
    push(1, "remark reproduction, q=3", Some(1), t, remark());

    let t = Instant::now();
    push(2, "example N=131, q=9", Some(1), t, example_131());

    // criteria 3 to 6 share one scan
    let t = Instant::now();
    let ps = verify::powersum_suite(&ranges);
    let ps_time = t;
    push(3, "formula vs brute force", Some(300), ps_time,
        from_outcomes(&[find(&ps, "formula-vs-bruteforce")]));
    push(4, "extreme monomials", None, ps_time, from_outcomes(&[
        find(&ps, "greedy-top-degree"),
        find(&ps, "modest-bottom-degree"),
    ]));
    push(5, "vanishing triple agreement", None, ps_time,
        from_outcomes(&[find(&ps, "vanishing-criterion")]));
    push(6, "valuation chain", None, ps_time, from_outcomes(&[find(&ps, "valuation-chain")]));

    let t = Instant::now();
    let (zeros, vals) = verify::zeta_sweep_check(&ranges);
    push(7, "negative multizeta sweep", Some(600), t, from_outcomes(&[&zeros, &vals]));

    let t = Instant::now();
    push(8, "depth-one vanishing", None, t, from_outcomes(&[&verify::goss_suite(&ranges)]));

    // criteria 9 and 12 share one scan
    let t = Instant::now();
    let mo = verify::modest_optimal_checks(&ranges);
    push(9, "optimal set is the modest element", None, t,
        from_outcomes(&[find(&mo, "modest-is-optimal")]));

    let t = Instant::now();
    let lattice = verify::lattice_check(&ranges);
    let membership = verify::membership_check(&ranges);
    push(10, "membership characterizations", None, t, from_outcomes(&[&lattice, &membership]));

    let t = Instant::now();
    let (literal, repaired) = verify::cover_check(&ranges);
    push(11, "cover construction postconditions", None, t,
        known_counterexample(&literal, &[&repaired]));

    let t = Instant::now();
    push(12, "modest structural invariants", None, t, known_counterexample(
        find(&mo, "modest-drop-last"),
        &[
            find(&mo, "modest-drop-last-constrained"),
            find(&mo, "modest-drop-first"),
            find(&mo, "modest-scaling"),
            find(&mo, "modest-estimation"),
            find(&mo, "modest-bounds"),
        ],
    ));

    let mut unexpected = 0;
    for l in &lines {
        let over = l.budget.is_some_and(|b| l.elapsed > b);
        let pass = l.status == Status::Pass && !over;
        if !pass && (l.status != Status::KnownFail || over) {
            unexpected += 1;
        }
        let budget = l.budget.map(|b| format!(" (limit {}s)", b.as_secs())).unwrap_or_default();
        println!(
            "{} {:>2} {:<36} {:>8.3}s{budget}  {}",
            if pass { "PASS" } else { "FAIL" },
            l.number,
            l.title,
            l.elapsed.as_secs_f64(),
            l.detail
        );
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criterion line(s) failed unexpectedly");
        ExitCode::FAILURE
    }
}
