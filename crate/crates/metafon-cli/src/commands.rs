use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use metafon::index::{self, PhoneticIndex, Rank, Reject};
use metafon::stats;
use metafon::textnorm::{clean_medicine, clean_surname};
use metafon::{medicine, surname, Mode};

use crate::io_util::{input_lines, output_writer, read_input};

/// Phonetic keys and fuzzy-match indexes for Ukrainian surnames and
/// medicine titles. Data goes to stdout, diagnostics and rejected records
/// to stderr; exit code 1 means some input was rejected, 2 a usage error.
#[derive(Parser)]
#[command(name = "metafon", version)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RulesetArg {
    Surname,
    Medicine,
}

impl From<RulesetArg> for Mode {
    fn from(arg: RulesetArg) -> Mode {
        match arg {
            RulesetArg::Surname => Mode::Surname,
            RulesetArg::Medicine => Mode::Medicine,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
enum RankArg {
    #[default]
    None,
    EditDistance,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
enum FormatArg {
    #[default]
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Print the phonetic key for each input line
    Key {
        #[arg(long, value_enum)]
        ruleset: RulesetArg,
        /// Input file, one record per line; stdin when omitted
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Emit the rewrite trace (step, before, after) to stderr
        #[arg(long)]
        trace: bool,
    },
    /// Build a phonetic index from a corpus, one record per line
    IndexBuild {
        #[arg(long, value_enum)]
        ruleset: RulesetArg,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Optimization-gain report for an index file
    IndexStats {
        /// Index file produced by index-build; stdin when omitted
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: FormatArg,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Look one record up in an index file
    Query {
        /// The record to search for
        #[arg(long)]
        name: String,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        rank: RankArg,
        #[arg(long, value_enum, default_value_t)]
        format: FormatArg,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// List buckets that hold two or more distinct spellings
    Dedup {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Keep only the largest N groups
        #[arg(long)]
        top: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: FormatArg,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Frequency, ending and occurrence-class statistics for a surname index
    StatsFreq {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        top: usize,
        #[arg(long, value_enum, default_value_t)]
        format: FormatArg,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Time per-rule rewriting and bucket lookup against a linear scan
    Bench {
        /// Corpus file, one record per line; at least 1,000 records
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = RulesetArg::Surname)]
        ruleset: RulesetArg,
        /// How many lookup queries to time
        #[arg(long, default_value_t = 50)]
        queries: usize,
        #[arg(long, value_enum, default_value_t)]
        format: FormatArg,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

pub fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Key {
            ruleset,
            input,
            output,
            trace,
        } => cmd_key(ruleset.into(), input, output, trace),
        Command::IndexBuild {
            ruleset,
            input,
            output,
        } => cmd_index_build(ruleset.into(), input, output),
        Command::IndexStats {
            input,
            format,
            output,
        } => cmd_index_stats(input, format, output),
        Command::Query {
            name,
            input,
            rank,
            format,
            output,
        } => cmd_query(&name, input, rank, format, output),
        Command::Dedup {
            input,
            top,
            format,
            output,
        } => cmd_dedup(input, top, format, output),
        Command::StatsFreq {
            input,
            top,
            format,
            output,
        } => cmd_stats_freq(input, top, format, output),
        Command::Bench {
            input,
            ruleset,
            queries,
            format,
            output,
        } => cmd_bench(&input, ruleset.into(), queries, format, output),
    }
}

fn report_rejects(rejects: &[Reject], total: usize) -> ExitCode {
    if rejects.is_empty() {
        return ExitCode::SUCCESS;
    }
    for reject in rejects {
        eprintln!("{}\t{}", reject.line, reject.reason);
    }
    eprintln!("rejected {} of {} records", rejects.len(), total);
    ExitCode::from(1)
}

fn cmd_key(
    mode: Mode,
    input: Option<PathBuf>,
    output: Option<PathBuf>,
    trace: bool,
) -> anyhow::Result<ExitCode> {
    let mut out = output_writer(output.as_ref())?;
    let mut rejects = Vec::new();
    let mut total = 0usize;

    for (n, line) in input_lines(input.as_deref())?.enumerate() {
        let line_no = n + 1;
        let line = line.with_context(|| format!("input line {line_no}"))?;
        total += 1;
        match mode {
            Mode::Surname => match clean_surname(&line) {
                Ok(token) => {
                    if trace {
                        let (key, steps) = surname::surname_key_trace(&token);
                        emit_trace(line_no, &line, steps.steps());
                        writeln!(out, "{key}")?;
                    } else {
                        writeln!(out, "{}", surname::surname_key(&token))?;
                    }
                }
                Err(err) => {
                    // keep stdout line-aligned with the input
                    writeln!(out)?;
                    rejects.push(Reject {
                        line: line_no,
                        reason: err.to_string(),
                    });
                }
            },
            Mode::Medicine => {
                let tokens = clean_medicine(&line);
                let mut keys = Vec::with_capacity(tokens.len());
                for token in &tokens {
                    if trace {
                        let (key, steps) = medicine::medicine_rules().apply_traced(token.text());
                        emit_trace(line_no, token.text(), steps.steps());
                        keys.push(key);
                    } else {
                        keys.push(medicine::medicine_token_key(token).into_string());
                    }
                }
                writeln!(out, "{}", keys.join(" "))?;
            }
        }
    }
    out.flush()?;
    Ok(report_rejects(&rejects, total))
}

fn emit_trace(line_no: usize, record: &str, steps: &[metafon::rewrite::TraceStep]) {
    eprintln!("# line {line_no}: {record}");
    for step in steps {
        eprintln!("{}\t{}\t{}", step.rule + 1, step.before, step.after);
    }
}

fn cmd_index_build(
    mode: Mode,
    input: Option<PathBuf>,
    output: Option<PathBuf>,
) -> anyhow::Result<ExitCode> {
    let collected: Vec<std::io::Result<String>> = input_lines(input.as_deref())?.collect();
    let total = collected.len();
    let (index, rejects) = index::build(collected, mode)?;

    let mut out = output_writer(output.as_ref())?;
    out.write_all(index.to_text().as_bytes())?;
    out.flush()?;
    eprintln!(
        "indexed {} records into {} keys ({} distinct forms)",
        index.record_count(),
        index.key_count(),
        index.form_count()
    );
    Ok(report_rejects(&rejects, total))
}

fn load_index(input: Option<&PathBuf>) -> anyhow::Result<PhoneticIndex> {
    let text = read_input(input.map(|p| p.as_path()))?;
    Ok(PhoneticIndex::from_text(&text)?)
}

fn write_out(output: Option<&PathBuf>, body: &str) -> anyhow::Result<()> {
    let mut out = output_writer(output)?;
    out.write_all(body.as_bytes())?;
    if !body.ends_with('\n') {
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

fn cmd_index_stats(
    input: Option<PathBuf>,
    format: FormatArg,
    output: Option<PathBuf>,
) -> anyhow::Result<ExitCode> {
    let index = load_index(input.as_ref())?;
    let report: stats::OptimizationReport<f64> = stats::optimization_report(&index)?;
    let body = match format {
        FormatArg::Structured => to_json(&report)?,
        FormatArg::Text => render_gain(&report, index.record_count()),
    };
    write_out(output.as_ref(), &body)?;
    Ok(ExitCode::SUCCESS)
}

fn render_gain(report: &stats::OptimizationReport<f64>, records: u64) -> String {
    let mut s = String::new();
    s.push_str(&format!("ruleset: {}\n", report.ruleset));
    s.push_str(&format!("records: {records}\n\n"));
    s.push_str(&format!(
        "{:<18}{:>14}{:>14}{:>10}\n",
        "sample", "full", "index", "gain"
    ));
    let mut row = |label: &str, full: u64, idx: u64, pct: f64| {
        s.push_str(&format!("{label:<18}{full:>14}{idx:>14}{:>9.1}%\n", pct));
    };
    row(
        "rows  structured",
        report.structured.full_count,
        report.structured.index_count,
        report.structured.count_gain_pct,
    );
    row(
        "rows  full",
        report.full.full_count,
        report.full.index_count,
        report.full.count_gain_pct,
    );
    row(
        "chars structured",
        report.structured.full_volume,
        report.structured.index_volume,
        report.structured.volume_gain_pct,
    );
    row(
        "chars full",
        report.full.full_volume,
        report.full.index_volume,
        report.full.volume_gain_pct,
    );
    s
}

fn cmd_query(
    name: &str,
    input: Option<PathBuf>,
    rank: RankArg,
    format: FormatArg,
    output: Option<PathBuf>,
) -> anyhow::Result<ExitCode> {
    let index = load_index(input.as_ref())?;
    let rank = match rank {
        RankArg::None => Rank::None,
        RankArg::EditDistance => Rank::EditDistance,
    };
    let hits = index.lookup(name, rank)?;
    if hits.is_empty() {
        eprintln!("no bucket for '{name}'");
    }
    let body = match format {
        FormatArg::Structured => to_json(&hits)?,
        FormatArg::Text => {
            let mut s = String::new();
            for hit in &hits {
                match hit.distance {
                    Some(d) => s.push_str(&format!("{}\t{}\t{}\n", hit.form, hit.count, d)),
                    None => s.push_str(&format!("{}\t{}\n", hit.form, hit.count)),
                }
            }
            s
        }
    };
    if !body.is_empty() {
        write_out(output.as_ref(), &body)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_dedup(
    input: Option<PathBuf>,
    top: Option<usize>,
    format: FormatArg,
    output: Option<PathBuf>,
) -> anyhow::Result<ExitCode> {
    let index = load_index(input.as_ref())?;
    let mut groups = index.dedup_groups();
    if let Some(top) = top {
        groups.truncate(top);
    }
    let body = match format {
        FormatArg::Structured => to_json(&groups)?,
        FormatArg::Text => {
            let mut s = String::new();
            for group in &groups {
                let members: Vec<String> = group
                    .members
                    .iter()
                    .map(|(form, count)| format!("{form}={count}"))
                    .collect();
                s.push_str(&format!(
                    "{}\t{}\t{}\n",
                    group.key,
                    group.total,
                    members.join(";")
                ));
            }
            s
        }
    };
    if !body.is_empty() {
        write_out(output.as_ref(), &body)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_stats_freq(
    input: Option<PathBuf>,
    top: usize,
    format: FormatArg,
    output: Option<PathBuf>,
) -> anyhow::Result<ExitCode> {
    let index = load_index(input.as_ref())?;
    let report: stats::FrequencyReport<f64> = stats::frequency_report(&index, top)?;
    let body = match format {
        FormatArg::Structured => to_json(&report)?,
        FormatArg::Text => render_frequency(&report),
    };
    write_out(output.as_ref(), &body)?;
    Ok(ExitCode::SUCCESS)
}

fn render_frequency(report: &stats::FrequencyReport<f64>) -> String {
    let mut s = format!("records: {}\n\ntop forms\n", report.records);
    s.push_str(&format!("{:>10}{:>12}  {}\n", "count", "per-mille", "form"));
    for rate in &report.top {
        s.push_str(&format!(
            "{:>10}{:>12.3}  {}\n",
            rate.count, rate.per_mille, rate.form
        ));
    }
    s.push_str("\nendings\n");
    s.push_str(&format!("{:>10}  {:<6}{}\n", "count", "code", "ending"));
    for e in &report.endings {
        s.push_str(&format!("{:>10}  {:<6}{}\n", e.count, e.code, e.ending));
    }
    s.push_str("\noccurrence classes\n");
    s.push_str(&format!(
        "{:>12}{:>10}{:>14}{:>12}\n",
        "occurrences", "forms", "observed", "model"
    ));
    for row in &report.power_law {
        s.push_str(&format!(
            "{:>12}{:>10}{:>14.3}{:>12.3}\n",
            row.occurrences, row.class_size, row.observed_per_mille, row.model_per_mille
        ));
    }
    s
}

#[derive(Serialize)]
struct RuleTiming {
    rule: usize,
    description: String,
    total_micros: u128,
}

#[derive(Serialize)]
struct BenchReport {
    records: u64,
    distinct_forms: u64,
    keys: u64,
    rewrite_total_ms: f64,
    rule_timings: Vec<RuleTiming>,
    queries: usize,
    bucket_mean_micros: f64,
    scan_mean_micros: f64,
    speedup: f64,
}

fn cmd_bench(
    input: &std::path::Path,
    mode: Mode,
    queries: usize,
    format: FormatArg,
    output: Option<PathBuf>,
) -> anyhow::Result<ExitCode> {
    let raw = read_input(Some(input))?;
    let lines: Vec<&str> = raw.lines().filter(|l| !l.trim().is_empty()).collect();
    if lines.len() < 1_000 {
        bail!(
            "corpus has {} records; need at least 1,000 for meaningful timings",
            lines.len()
        );
    }

    // per-rule rewrite cost over every cleaned token
    let rules = index::rules_for(mode);
    let mut acc = vec![Duration::ZERO; rules.len()];
    let mut tokens = Vec::new();
    for line in &lines {
        match mode {
            Mode::Surname => {
                if let Ok(token) = clean_surname(line) {
                    if !token.hyphenated() {
                        rules.apply_timed(token.text(), &mut acc);
                    }
                    tokens.push(token);
                }
            }
            Mode::Medicine => {
                for token in clean_medicine(line) {
                    rules.apply_timed(token.text(), &mut acc);
                    tokens.push(token);
                }
            }
        }
    }

    let (index, _) = index::build_from_strs(lines.iter().copied(), mode);
    let forms: Vec<&str> = index.iter().map(|(_, form, _)| form).collect();

    // queries are forms sampled evenly across the index
    let step = (forms.len() / queries.max(1)).max(1);
    let picked: Vec<&str> = forms.iter().step_by(step).take(queries).copied().collect();

    // warm-up runs are excluded from the means
    for q in picked.iter().take(3) {
        let _ = index.lookup(q, Rank::EditDistance);
        let _ = linear_scan(&forms, q);
    }

    let started = Instant::now();
    for q in &picked {
        let _ = index.lookup(q, Rank::EditDistance);
    }
    let bucket_mean = started.elapsed().as_secs_f64() * 1e6 / picked.len() as f64;

    let started = Instant::now();
    for q in &picked {
        let _ = linear_scan(&forms, q);
    }
    let scan_mean = started.elapsed().as_secs_f64() * 1e6 / picked.len() as f64;

    let mut rule_timings: Vec<RuleTiming> = acc
        .iter()
        .enumerate()
        .map(|(i, d)| RuleTiming {
            rule: i + 1,
            description: rules.rules()[i].to_string(),
            total_micros: d.as_micros(),
        })
        .collect();
    rule_timings.sort_by_key(|t| std::cmp::Reverse(t.total_micros));

    let report = BenchReport {
        records: index.record_count(),
        distinct_forms: index.form_count(),
        keys: index.key_count(),
        rewrite_total_ms: acc.iter().map(Duration::as_secs_f64).sum::<f64>() * 1e3,
        rule_timings,
        queries: picked.len(),
        bucket_mean_micros: bucket_mean,
        scan_mean_micros: scan_mean,
        speedup: scan_mean / bucket_mean,
    };

    let body = match format {
        FormatArg::Structured => to_json(&report)?,
        FormatArg::Text => render_bench(&report),
    };
    write_out(output.as_ref(), &body)?;
    Ok(ExitCode::SUCCESS)
}

// the no-index baseline: edit distance against every distinct form
fn linear_scan(forms: &[&str], query: &str) -> usize {
    forms
        .iter()
        .map(|form| metafon::edit_distance(form, query))
        .min()
        .unwrap_or(0)
}

fn render_bench(report: &BenchReport) -> String {
    let mut s = format!(
        "corpus: {} records, {} distinct forms, {} keys\n",
        report.records, report.distinct_forms, report.keys
    );
    s.push_str(&format!(
        "rewrite total: {:.1} ms\n\nrule timing, descending\n",
        report.rewrite_total_ms
    ));
    s.push_str(&format!(
        "{:>12}  {:<6}{}\n",
        "micros", "rule", "description"
    ));
    for t in &report.rule_timings {
        s.push_str(&format!(
            "{:>12}  #{:<5}{}\n",
            t.total_micros, t.rule, t.description
        ));
    }
    s.push_str(&format!(
        "\nlookup latency over {} queries (warm-up excluded)\n",
        report.queries
    ));
    s.push_str(&format!(
        "  bucket:      {:>12.1} us mean\n",
        report.bucket_mean_micros
    ));
    s.push_str(&format!(
        "  linear scan: {:>12.1} us mean\n",
        report.scan_mean_micros
    ));
    s.push_str(&format!("  speedup: {:.1}x\n", report.speedup));
    s
}
