//! Subcommand implementations. Each returns whether its assertions held.

use serde::Serialize;

use repfn_core::density::{density_from_counts, DensityReport};
use repfn_core::digit_analysis::{enumerate_s, enumerate_t, f_count, pair_weight, toggle};
use repfn_core::digits::popcount;
use repfn_core::extremal::{allones_zero_check_with, extremal_from_counts, Windowing};
use repfn_core::partition::{
    block_structure_check, check_digit_rules, extend_partition_with, lemma2_check, Failure,
    PartitionSpec, Variant, VerificationReport,
};
use repfn_core::prefix::{Limits, SetPrefix};
use repfn_core::repfn::CounterKind;
use repfn_core::thue_morse_member;

use crate::config::{
    Command, Format, RangeArg, RunConfig, SetArgs, VariantArg, DEFAULT_CS, DEFAULT_THETAS,
};
use crate::error::CliError;
use crate::hexmap;
use crate::output::{opt_real, real, Sink};
use crate::parallel;

/// Dispatches `cfg` and writes its report. `Ok(false)` means a check failed.
pub fn run(cfg: &RunConfig) -> Result<bool, CliError> {
    let limits = Limits {
        max_elements: cfg.max_elements,
    };
    let ctx = Ctx {
        limits,
        format: cfg.format(),
    };
    let mut sink = Sink::open(cfg.output.as_deref())?;
    let passed = match &cfg.command {
        Command::Tm { x } => tm(&ctx, &mut sink, *x)?,
        Command::Repfn { x, counter, set } => repfn(&ctx, &mut sink, *x, *counter, set)?,
        Command::Construct { x, set } => construct(&ctx, &mut sink, *x, set)?,
        Command::Verify { x, set } => verify(&ctx, &mut sink, *x, set)?,
        Command::Lemma2 { m_max, i_max, set } => lemma2(&ctx, &mut sink, *m_max, *i_max, set)?,
        Command::Blocks { k, x, set } => blocks(&ctx, &mut sink, *k, *x, set)?,
        Command::Sdecomp { x, from } => sdecomp(&ctx, &mut sink, *from, *x)?,
        Command::Tclasses { x, from } => tclasses(&ctx, &mut sink, *from, *x)?,
        Command::Density {
            x,
            theta,
            c,
            counter,
            set,
        } => density(&ctx, &mut sink, *x, theta, c, (*counter).into(), set)?,
        Command::Scan {
            x,
            window_size,
            counter,
            allones,
            set,
        } => scan(&ctx, &mut sink, *x, *window_size, (*counter).into(), *allones, set)?,
    };
    sink.finish()?;
    Ok(passed)
}

struct Ctx {
    limits: Limits,
    format: Format,
}

/// Resolves presets and the hex form into a partition spec.
pub fn resolve_spec(set: &SetArgs) -> Result<PartitionSpec, CliError> {
    let preset = match set.initial.as_str() {
        "thue-morse" => Some(Variant::R2),
        "chen-wang" => Some(Variant::R3),
        _ => None,
    };
    match preset {
        Some(default_variant) => {
            if set.threshold.is_some_and(|n| n != 1) {
                return Err(CliError::Usage(format!(
                    "preset {} has N = 1",
                    set.initial
                )));
            }
            let variant = set.variant.map_or(default_variant, Variant::from);
            Ok(PartitionSpec::unit(variant))
        }
        None => {
            let n = set.threshold.ok_or_else(|| {
                CliError::Usage("--N is required with a hex initial segment".into())
            })?;
            let len = n
                .checked_mul(2)
                .and_then(|l| usize::try_from(l).ok())
                .ok_or_else(|| CliError::Usage(format!("N = {n} is too large")))?;
            let bits = hexmap::decode(&set.initial, len)?;
            let variant = set.variant.unwrap_or(VariantArg::R2).into();
            Ok(PartitionSpec::new(variant, n, bits)?)
        }
    }
}

fn build(
    ctx: &Ctx,
    set: &SetArgs,
    x: u64,
) -> Result<(PartitionSpec, SetPrefix), CliError> {
    let spec = resolve_spec(set)?;
    let mut a = extend_partition_with(&spec, x, &ctx.limits)?;
    for &m in &set.flip {
        a = a.with_flipped(m)?;
    }
    Ok((spec, a))
}

fn flag(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

#[derive(Serialize)]
struct TmRow {
    n: u64,
    popcount: u32,
    member: bool,
    binary: String,
}

fn tm(ctx: &Ctx, sink: &mut Sink, x: u64) -> Result<bool, CliError> {
    ctx.limits.check(x)?;
    let rows = (0..=x).map(|n| TmRow {
        n,
        popcount: popcount(n),
        member: thue_morse_member(n),
        binary: format!("{n:b}"),
    });
    match ctx.format {
        Format::Csv => sink.csv(
            &["n", "popcount", "member", "binary"],
            rows.map(|r| {
                [
                    r.n.to_string(),
                    r.popcount.to_string(),
                    flag(r.member).to_string(),
                    r.binary,
                ]
            }),
        )?,
        Format::Json => sink.json(&rows.collect::<Vec<_>>())?,
    }
    Ok(true)
}

#[derive(Serialize)]
struct RangeReport<'a> {
    counter: &'a str,
    x: u64,
    values: Vec<u32>,
}

fn repfn(
    ctx: &Ctx,
    sink: &mut Sink,
    x: u64,
    counter: RangeArg,
    set: &SetArgs,
) -> Result<bool, CliError> {
    let (_, a) = build(ctx, set, x)?;
    let (name, values) = match counter {
        RangeArg::R2 => ("r2", parallel::range(&a, x, CounterKind::R2, &ctx.limits)?),
        RangeArg::R3 => ("r3", parallel::range(&a, x, CounterKind::R3, &ctx.limits)?),
        RangeArg::Cross => (
            "r_cross",
            parallel::cross_range(&a, &a.complement(), x, &ctx.limits)?,
        ),
    };
    match ctx.format {
        Format::Csv => sink.csv(
            &["n", name],
            values
                .iter()
                .enumerate()
                .map(|(n, v)| [n.to_string(), v.to_string()]),
        )?,
        Format::Json => sink.json(&RangeReport {
            counter: name,
            x,
            values,
        })?,
    }
    Ok(true)
}

#[derive(Serialize)]
struct ConstructReport {
    variant: Variant,
    threshold: u64,
    initial: String,
    x: u64,
    flipped: Vec<u64>,
    size: u64,
    bitmap: String,
}

fn construct(ctx: &Ctx, sink: &mut Sink, x: u64, set: &SetArgs) -> Result<bool, CliError> {
    let (spec, a) = build(ctx, set, x)?;
    match ctx.format {
        Format::Csv => sink.csv(
            &["n", "member"],
            (0..=x).map(|n| [n.to_string(), flag(a.contains(n)).to_string()]),
        )?,
        Format::Json => {
            let bits: Vec<bool> = (0..=x).map(|n| a.contains(n)).collect();
            sink.json(&ConstructReport {
                variant: spec.variant(),
                threshold: spec.threshold(),
                initial: hexmap::encode(spec.initial()),
                x,
                flipped: set.flip.clone(),
                size: a.len(),
                bitmap: hexmap::encode(&bits),
            })?
        }
    }
    Ok(true)
}

const SUMMARY_HEADER: [&str; 5] = ["check", "lo", "hi", "passed", "failures"];

fn summary_row(check: &str, r: &VerificationReport) -> [String; 5] {
    [
        check.to_string(),
        r.checked_range.lo.to_string(),
        r.checked_range.hi.to_string(),
        flag(r.passed).to_string(),
        r.failures.len().to_string(),
    ]
}

#[derive(Serialize)]
struct DigitRules {
    x: u64,
    passed: bool,
}

#[derive(Serialize)]
struct VerifyReport {
    variant: Variant,
    threshold: u64,
    equality: VerificationReport,
    digit_rules: DigitRules,
    passed: bool,
}

fn verify(ctx: &Ctx, sink: &mut Sink, x: u64, set: &SetArgs) -> Result<bool, CliError> {
    let (spec, a) = build(ctx, set, x)?;
    let kind = spec.variant().counter();
    let lhs = parallel::range(&a, x, kind, &ctx.limits)?;
    let rhs = parallel::range(&a.complement(), x, kind, &ctx.limits)?;
    let lo = 2 * spec.threshold() - 1;
    let failures = (lo..=x)
        .filter_map(|n| {
            let (l, r) = (lhs[n as usize], rhs[n as usize]);
            (l != r).then_some(Failure {
                n,
                lhs: l.into(),
                rhs: r.into(),
            })
        })
        .collect();
    let equality = VerificationReport::new(lo, x, failures);

    let rules_x = (x / 4).max(lo);
    let rules = DigitRules {
        x: rules_x,
        passed: check_digit_rules(&a, spec.threshold(), rules_x, spec.variant())?,
    };
    let passed = equality.passed && rules.passed;
    match ctx.format {
        Format::Csv => {
            let rules_row = [
                "digit_rules".to_string(),
                spec.threshold().to_string(),
                rules_x.to_string(),
                flag(rules.passed).to_string(),
                (u8::from(!rules.passed)).to_string(),
            ];
            sink.csv(&SUMMARY_HEADER, [summary_row("equality", &equality), rules_row])?
        }
        Format::Json => sink.json(&VerifyReport {
            variant: spec.variant(),
            threshold: spec.threshold(),
            equality,
            digit_rules: rules,
            passed,
        })?,
    }
    Ok(passed)
}

fn report_out(
    ctx: &Ctx,
    sink: &mut Sink,
    check: &str,
    report: &VerificationReport,
) -> Result<(), CliError> {
    match ctx.format {
        Format::Csv => sink.csv(&SUMMARY_HEADER, [summary_row(check, report)]),
        Format::Json => sink.json(report),
    }
}

fn lemma2(
    ctx: &Ctx,
    sink: &mut Sink,
    m_max: u64,
    i_max: u32,
    set: &SetArgs,
) -> Result<bool, CliError> {
    if i_max >= 63 {
        return Err(CliError::Usage("--i-max must be below 63".into()));
    }
    let span = 1u64 << i_max;
    let need = m_max
        .checked_mul(span)
        .and_then(|v| v.checked_add(span - 1))
        .ok_or_else(|| CliError::Usage("grid exceeds u64".into()))?;
    let (spec, a) = build(ctx, set, need)?;
    let report = lemma2_check(&a, spec.threshold(), m_max, i_max)?;
    report_out(ctx, sink, "lemma2", &report)?;
    Ok(report.passed)
}

fn blocks(
    ctx: &Ctx,
    sink: &mut Sink,
    k: u32,
    x: Option<u64>,
    set: &SetArgs,
) -> Result<bool, CliError> {
    let spec = resolve_spec(set)?;
    if !(1..40).contains(&k) {
        return Err(CliError::Usage("--k must be in 1..40".into()));
    }
    let x = x.unwrap_or((((1u64 << spec.k0()) + 4) << k) - 1);
    let (spec, a) = build(ctx, set, x)?;
    let report = block_structure_check(&a, &spec, k)?;
    match ctx.format {
        Format::Csv => sink.csv(&SUMMARY_HEADER, [summary_row("blocks", &report.report)])?,
        Format::Json => sink.json(&report)?,
    }
    Ok(report.report.passed)
}

#[derive(Serialize)]
struct SRow {
    n: u64,
    f: u32,
    positions: Vec<u32>,
    s1: u64,
    s2: u64,
    s3: u64,
    s: u64,
    holds: bool,
    within_t: bool,
}

fn sdecomp(ctx: &Ctx, sink: &mut Sink, from: u64, x: u64) -> Result<bool, CliError> {
    ctx.limits.check(x)?;
    let mut rows = Vec::new();
    for n in from.max(1)..=x {
        if f_count(n) == 0 {
            continue;
        }
        let e = enumerate_s(n)?;
        let d = e.decomposition;
        rows.push(SRow {
            n,
            f: e.profile.f,
            positions: e.profile.positions,
            s1: d.s1,
            s2: d.s2,
            s3: d.s3,
            s: d.s,
            holds: d.holds(),
            within_t: e.members.iter().all(|p| p.in_t),
        });
    }
    let passed = rows.iter().all(|r| r.holds && r.within_t);
    match ctx.format {
        Format::Csv => sink.csv(
            &["n", "f", "s1", "s2", "s3", "s", "holds", "within_t"],
            rows.iter().map(|r| {
                [
                    r.n.to_string(),
                    r.f.to_string(),
                    r.s1.to_string(),
                    r.s2.to_string(),
                    r.s3.to_string(),
                    r.s.to_string(),
                    flag(r.holds).to_string(),
                    flag(r.within_t).to_string(),
                ]
            }),
        )?,
        Format::Json => sink.json(&rows)?,
    }
    Ok(passed)
}

#[derive(Serialize)]
struct TRow {
    n: u64,
    pairs: u64,
    aa: u64,
    bb: u64,
    ab: u64,
    ba: u64,
    balanced: bool,
    toggle_ok: bool,
}

fn toggle_ok(p: &repfn_core::digit_analysis::RepPair) -> bool {
    let Ok(q) = toggle(p) else { return false };
    let (Some(s), Some(t)) = (p.site, q.site) else {
        return false;
    };
    q.in_t
        && s.l == t.l
        && t.pattern == s.pattern.opposite()
        && pair_weight(p.y, p.z).abs_diff(pair_weight(q.y, q.z)) == 1
        && toggle(&q).ok().as_ref() == Some(p)
}

fn tclasses(ctx: &Ctx, sink: &mut Sink, from: u64, x: u64) -> Result<bool, CliError> {
    ctx.limits.check(x)?;
    let rows: Vec<TRow> = (from.max(1)..=x)
        .map(|n| {
            let t = enumerate_t(n);
            let c = t.counts;
            TRow {
                n,
                pairs: c.total(),
                aa: c.aa,
                bb: c.bb,
                ab: c.ab,
                ba: c.ba,
                balanced: c.balanced(),
                toggle_ok: t.members.iter().all(toggle_ok),
            }
        })
        .collect();
    let passed = rows.iter().all(|r| r.balanced && r.toggle_ok);
    match ctx.format {
        Format::Csv => sink.csv(
            &["n", "pairs", "aa", "bb", "ab", "ba", "balanced", "toggle_ok"],
            rows.iter().map(|r| {
                [
                    r.n.to_string(),
                    r.pairs.to_string(),
                    r.aa.to_string(),
                    r.bb.to_string(),
                    r.ab.to_string(),
                    r.ba.to_string(),
                    flag(r.balanced).to_string(),
                    flag(r.toggle_ok).to_string(),
                ]
            }),
        )?,
        Format::Json => sink.json(&rows)?,
    }
    Ok(passed)
}

fn density(
    ctx: &Ctx,
    sink: &mut Sink,
    x: u64,
    thetas: &[f64],
    cs: &[f64],
    kind: CounterKind,
    set: &SetArgs,
) -> Result<bool, CliError> {
    let thetas = if thetas.is_empty() { &DEFAULT_THETAS[..] } else { thetas };
    let cs = if cs.is_empty() { &DEFAULT_CS[..] } else { cs };
    let (_, a) = build(ctx, set, x)?;
    let counts = parallel::range(&a, x, kind, &ctx.limits)?;
    let mut reports: Vec<DensityReport> = Vec::new();
    for &theta in thetas {
        for &c in cs {
            reports.push(density_from_counts(&counts, theta, c, kind)?);
        }
    }
    match ctx.format {
        Format::Csv => {
            let tagged = reports.len() > 1;
            let mut header = vec!["window_lo", "window_hi", "total", "good", "fraction"];
            if tagged {
                header.splice(0..0, ["theta", "C"]);
            }
            let rows = reports.iter().flat_map(|r| {
                r.windows.iter().map(move |w| {
                    let mut row = Vec::with_capacity(7);
                    if tagged {
                        row.push(real(r.theta));
                        row.push(real(r.c));
                    }
                    row.extend([
                        w.window_lo.to_string(),
                        w.window_hi.to_string(),
                        w.total.to_string(),
                        w.good.to_string(),
                        opt_real(w.fraction),
                    ]);
                    row
                })
            });
            sink.csv(&header, rows)?
        }
        Format::Json => sink.json(&reports)?,
    }
    Ok(true)
}

#[allow(clippy::too_many_arguments)]
fn scan(
    ctx: &Ctx,
    sink: &mut Sink,
    x: u64,
    window_size: Option<u64>,
    kind: CounterKind,
    allones: Option<u32>,
    set: &SetArgs,
) -> Result<bool, CliError> {
    let windowing = window_size.map_or(Windowing::Dyadic, Windowing::Fixed);
    let (_, a) = build(ctx, set, x)?;
    let counts = parallel::range(&a, x, kind, &ctx.limits)?;
    let records = extremal_from_counts(&counts, windowing, kind)?;
    let mut passed = true;
    if let Some(l_max) = allones {
        let report = allones_zero_check_with(l_max, &ctx.limits)?;
        eprintln!(
            "allones l <= {l_max}: {} ({} failures)",
            if report.passed { "pass" } else { "FAIL" },
            report.failures.len()
        );
        passed = report.passed;
    }
    match ctx.format {
        Format::Csv => sink.csv(
            &["n", "ratio", "kind", "counter_kind", "window_lo", "window_hi"],
            records.iter().map(|r| {
                [
                    r.n.to_string(),
                    real(r.ratio),
                    format!("{:?}", r.kind),
                    format!("{:?}", r.counter_kind),
                    r.window.lo.to_string(),
                    r.window.hi.to_string(),
                ]
            }),
        )?,
        Format::Json => sink.json(&records)?,
    }
    Ok(passed)
}
