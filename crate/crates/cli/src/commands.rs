use std::fs::File;
use std::io::{self, BufWriter, Write};

use fqmzv::compose::{
    enumerate_u, enumerate_w, greedy, modest, optimal_set, valid_matrices, Composition,
    Convention, Limits, ValidMatrix,
};
use fqmzv::digitlab::PrimePower;
use fqmzv::fqpoly::{make_field, Field};
use fqmzv::mzv::{sweep_negative, zeta_mixed, zeta_negative, MixedOptions, ZetaResult};
use fqmzv::powersum::{power_sum_bruteforce, power_sum_formula, PowerSumResult};
use fqmzv::verify::{self, Ranges, Suite};
use fqmzv::Error;
use serde::Serialize;

use crate::output::{join, Meta, Report};
use crate::{Cli, Command, FieldArgs, MethodArg, SuiteArg, What};

#[derive(Debug)]
pub enum Failure {
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type CmdResult = Result<u8, Failure>;

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Lib(Error::InvalidArgument(msg.into()))
}

fn resolve_field(args: &FieldArgs) -> Result<Field, Failure> {
    let q = match (args.q, args.p) {
        (Some(q), None) => {
            let q = PrimePower::from_q(q)?;
            if args.f.is_some_and(|f| f != q.f()) {
                return Err(invalid(format!("--f disagrees with --q {}", q.q())));
            }
            q
        }
        (None, Some(p)) => PrimePower::new(p, args.f.unwrap_or(1))?,
        (Some(q), Some(p)) => {
            let parsed = PrimePower::from_q(q)?;
            if parsed.p() != p || args.f.is_some_and(|f| f != parsed.f()) {
                return Err(invalid(format!("--q {q} disagrees with --p/--f")));
            }
            parsed
        }
        (None, None) => return Err(invalid("give --q, or --p with optional --f")),
    };
    Ok(make_field(q.p(), q.f())?)
}

pub fn run(cli: &Cli) -> CmdResult {
    let limits = Limits {
        max_multiplicity: cli.max_multiplicity,
    };
    let banner = !cli.no_banner;
    let stdout = io::stdout();
    match &cli.command {
        Command::Sweep {
            q,
            depth,
            smin,
            smax,
            out,
            jobs,
        } => {
            let report = sweep(q, *depth, *smin, *smax, *jobs, &limits)?;
            match out {
                Some(path) => {
                    let mut w = BufWriter::new(File::create(path)?);
                    report.render(cli.format, banner, &mut w)?;
                    w.flush()?;
                }
                None => report.render(cli.format, banner, &mut stdout.lock())?,
            }
            Ok(0)
        }
        other => {
            let (report, code) = match other {
                Command::Powersum {
                    field,
                    d,
                    s,
                    method,
                    max_evaluations,
                } => powersum(field, *d, *s, *method, *max_evaluations, &limits)?,
                Command::Mzv {
                    field,
                    s,
                    dmax,
                    max_evaluations,
                } => mzv(field, s, *dmax, *max_evaluations, &limits)?,
                Command::Compositions {
                    field,
                    k,
                    n,
                    d,
                    what,
                } => compositions(field, *k, *n, *d, *what, &limits)?,
                Command::Verify {
                    suite,
                    quick,
                    k_max,
                    s_min,
                    n_max,
                    instances,
                    seed,
                } => {
                    let mut r = if *quick {
                        Ranges::quick()
                    } else {
                        Ranges::default()
                    };
                    r.limits = limits;
                    if let Some(k) = k_max {
                        r.power_k_max = *k;
                        r.goss_k_max = *k;
                    }
                    if let Some(s) = s_min {
                        if *s >= 0 {
                            return Err(invalid("--s-min must be negative"));
                        }
                        r.zeta_s_min = *s;
                    }
                    if let Some(n) = n_max {
                        r.compose_n_max = *n;
                        r.membership_n_max = *n;
                        r.enum_n_max = r.enum_n_max.min(*n);
                        r.nonempty_n_max = *n;
                    }
                    if let Some(i) = instances {
                        r.cover_instances = *i;
                    }
                    if let Some(s) = seed {
                        r.cover_seed = *s;
                    }
                    run_verify(*suite, &r)
                }
                Command::Sweep { .. } => unreachable!("handled above"),
            };
            report.render(cli.format, banner, &mut stdout.lock())?;
            Ok(code)
        }
    }
}

const POWERSUM_COLUMNS: &[&str] = &["q", "p", "f", "d", "s", "method", "value", "valuation"];

fn push_power_sum(report: &mut Report, r: &PowerSumResult) {
    let rec = r.record();
    let row = vec![
        rec.q.to_string(),
        rec.p.to_string(),
        rec.f.to_string(),
        rec.d.to_string(),
        rec.s.to_string(),
        rec.method.to_string(),
        rec.value.clone(),
        rec.valuation.to_string(),
    ];
    let text = vec![
        format!("S_{}({}) = {}", rec.d, rec.s, rec.value),
        format!("valuation: {}", rec.valuation),
        format!("method: {}", rec.method),
    ];
    report.push(&rec, row, text);
}

fn powersum(
    field: &FieldArgs,
    d: usize,
    s: i64,
    method: MethodArg,
    max_evaluations: u128,
    limits: &Limits,
) -> Result<(Report, u8), Failure> {
    let field = resolve_field(field)?;
    let mut report = Report::new(POWERSUM_COLUMNS);
    report.meta(Meta::of(&field));
    let method = match method {
        MethodArg::Auto if s < 0 => MethodArg::Formula,
        MethodArg::Auto => MethodArg::Bruteforce,
        m => m,
    };
    let mut code = 0;
    match method {
        MethodArg::Formula => push_power_sum(&mut report, &power_sum_formula(&field, d, s, limits)?),
        MethodArg::Bruteforce => push_power_sum(
            &mut report,
            &power_sum_bruteforce(&field, d, s, max_evaluations)?,
        ),
        MethodArg::Both => {
            let a = power_sum_formula(&field, d, s, limits)?;
            let b = power_sum_bruteforce(&field, d, s, max_evaluations)?;
            push_power_sum(&mut report, &a);
            push_power_sum(&mut report, &b);
            if a.value == b.value {
                report.verdict("agreement: yes".into());
            } else {
                report.verdict("agreement: NO".into());
                code = 2;
            }
        }
        MethodArg::Auto => unreachable!("resolved above"),
    }
    Ok((report, code))
}

const ZETA_COLUMNS: &[&str] = &[
    "q",
    "p",
    "f",
    "s_tuple",
    "depth",
    "value",
    "valuation",
    "classification",
    "exact",
];

fn zeta_row(z: &ZetaResult) -> (fqmzv::mzv::ZetaRecord, Vec<String>) {
    let rec = z.record();
    let row = vec![
        rec.q.to_string(),
        rec.p.to_string(),
        rec.f.to_string(),
        join(&rec.s),
        rec.depth.to_string(),
        rec.value.clone(),
        rec.valuation.to_string(),
        rec.classification.to_string(),
        rec.exact.to_string(),
    ];
    (rec, row)
}

fn mzv(
    field: &FieldArgs,
    s: &[i64],
    dmax: usize,
    max_evaluations: u128,
    limits: &Limits,
) -> Result<(Report, u8), Failure> {
    let field = resolve_field(field)?;
    let q = field.prime_power();
    let z = if s.iter().all(|&x| x < 0) {
        zeta_negative(&field, s, limits)?
    } else {
        let opts = MixedOptions {
            d_max: dmax,
            max_evaluations,
        };
        zeta_mixed(&field, s, &opts, limits)?
    };
    let mut report = Report::new(ZETA_COLUMNS);
    report.meta(Meta::of(&field));
    let (rec, row) = zeta_row(&z);
    let mut text = vec![
        format!("zeta({}) = {}", join(&rec.s), rec.value),
        format!("valuation: {}", rec.valuation),
        format!("classification: {}", rec.classification),
        format!("exact: {}", rec.exact),
    ];
    if let [x] = s {
        if *x < 0 {
            text.push(format!("q-even: {}", q.is_q_even(x.unsigned_abs())));
        }
    }
    report.push(&rec, row, text);
    Ok((report, 0))
}

#[derive(Serialize)]
struct CompositionRecord {
    convention: Convention,
    target: u64,
    depth: usize,
    parts: Vec<u64>,
    weight: u128,
}

#[derive(Serialize)]
struct MatrixRecord {
    target: u64,
    depth: usize,
    rows: Vec<Vec<u64>>,
}

fn push_compositions(report: &mut Report, cs: &[Composition]) {
    for c in cs {
        let rec = CompositionRecord {
            convention: c.convention(),
            target: c.target(),
            depth: c.depth(),
            parts: c.parts().to_vec(),
            weight: c.weight(),
        };
        let row = vec![
            match rec.convention {
                Convention::U => "u".to_string(),
                Convention::W => "w".to_string(),
            },
            rec.target.to_string(),
            rec.depth.to_string(),
            join(&rec.parts),
            rec.weight.to_string(),
        ];
        let text = vec![format!("{c}\tweight {}", rec.weight)];
        report.push(&rec, row, text);
    }
}

fn push_matrices(report: &mut Report, ms: &[ValidMatrix]) {
    for m in ms {
        let rec = MatrixRecord {
            target: m.target(),
            depth: m.depth(),
            rows: m.rows(),
        };
        let row = vec![rec.target.to_string(), rec.depth.to_string(), m.to_string()];
        report.push(&rec, row, vec![m.to_string()]);
    }
}

/// Empty sets become empty listings.
fn or_empty<T>(r: fqmzv::Result<Vec<T>>) -> fqmzv::Result<Vec<T>> {
    match r {
        Err(Error::EmptySet(_)) => Ok(Vec::new()),
        other => other,
    }
}

fn compositions(
    field: &FieldArgs,
    k: Option<u64>,
    n: Option<u64>,
    d: usize,
    what: What,
    limits: &Limits,
) -> Result<(Report, u8), Failure> {
    let field = resolve_field(field)?;
    let q = field.prime_power();
    let (target, conv) = match (k, n) {
        (Some(k), None) => (k, Convention::U),
        (None, Some(n)) => (n, Convention::W),
        _ => return Err(invalid("give exactly one of --k and --N")),
    };
    // U_d(k) is the reversal of W_(d+1)(k)
    let w_depth = match conv {
        Convention::U => d + 1,
        Convention::W => d,
    };
    let mut report = if what == What::Matrices {
        Report::new(&["target", "depth", "matrix"])
    } else {
        Report::new(&["convention", "target", "depth", "parts", "weight"])
    };
    report.meta(Meta::of(&field));
    match what {
        What::List => {
            let cs = match conv {
                Convention::U => enumerate_u(target, d, &q, limits)?,
                Convention::W => enumerate_w(target, d, &q, limits)?,
            };
            push_compositions(&mut report, &cs);
        }
        What::Modest => {
            let cs = or_empty(modest(target, d, &q, conv, limits).map(|c| vec![c]))?;
            push_compositions(&mut report, &cs);
        }
        What::Greedy => {
            if conv == Convention::W {
                return Err(invalid("the greedy element is defined on U_d(k); use --k"));
            }
            let cs = or_empty(greedy(target, d, &q, limits).map(|c| vec![c]))?;
            push_compositions(&mut report, &cs);
        }
        What::Optimal => {
            let mut cs = or_empty(optimal_set(target, w_depth, &q, limits))?;
            if conv == Convention::U {
                cs = cs.iter().map(Composition::reversed).collect();
                cs.sort();
            }
            push_compositions(&mut report, &cs);
        }
        What::Matrices => {
            let ms = valid_matrices(target, w_depth, &q, limits)?;
            push_matrices(&mut report, &ms);
        }
    }
    Ok((report, 0))
}

fn sweep(
    qs: &[u64],
    depth: usize,
    smin: i64,
    smax: i64,
    jobs: usize,
    limits: &Limits,
) -> Result<Report, Failure> {
    if jobs == 0 {
        return Err(invalid("--jobs must be at least 1"));
    }
    let mut orders = qs.to_vec();
    orders.sort_unstable();
    orders.dedup();
    let fields = orders
        .iter()
        .map(|&q| {
            let q = PrimePower::from_q(q)?;
            make_field(q.p(), q.f())
        })
        .collect::<fqmzv::Result<Vec<_>>>()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| invalid(format!("cannot start {jobs} worker(s): {e}")))?;
    let mut report = Report::new(ZETA_COLUMNS);
    for field in &fields {
        report.meta(Meta::of(field));
        let mut rows = Vec::new();
        pool.install(|| {
            sweep_negative(field, depth, smin, smax, limits, &mut |z| {
                rows.push(z);
                Ok(())
            })
        })?;
        rows.sort_by(|a, b| a.index.entries().cmp(b.index.entries()));
        for z in &rows {
            let (rec, row) = zeta_row(z);
            let text = vec![format!(
                "q={} zeta({}) = {} [{}]",
                rec.q,
                join(&rec.s),
                rec.value,
                rec.classification
            )];
            report.push(&rec, row, text);
        }
    }
    Ok(report)
}

fn run_verify(suite: SuiteArg, ranges: &Ranges) -> (Report, u8) {
    let suite = match suite {
        SuiteArg::Digits => Suite::Digits,
        SuiteArg::Compose => Suite::Compose,
        SuiteArg::Powersum => Suite::PowerSum,
        SuiteArg::Mzv => Suite::Mzv,
        SuiteArg::All => Suite::All,
    };
    let outcomes = verify::run(suite, ranges);
    let mut report = Report::new(&["name", "passed", "checked", "detail", "statement"]);
    for o in &outcomes {
        let row = vec![
            o.name.to_string(),
            o.passed.to_string(),
            o.checked.to_string(),
            o.detail.clone(),
            o.statement.to_string(),
        ];
        report.push(o, row, vec![o.to_string()]);
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    report.verdict(format!("{} passed, {failed} failed", outcomes.len() - failed));
    (report, if failed == 0 { 0 } else { 2 })
}
