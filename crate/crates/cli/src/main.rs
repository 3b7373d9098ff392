use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use atlas::cayley;
use atlas::classify::{maximal_nilpotent, Budgets, Classifier, Enumeration, Mode};
use atlas::families::{relative_zero_subsemigroup, Bounds, FamilySpec};
use atlas::green::{eggbox_dot, GreenData};
use atlas::oracle;
use atlas::rees::{normal_form_search, pstar, BoolMatrix, ReesMatrixSemigroup};
use atlas::structure::Analysis;
use atlas::{ElementSet, Error, Exec, Semigroup};
use clap::{Parser, Subcommand};
use serde::Serialize;

/// Element listings larger than this are left out of stdout JSON; write to
/// a file with `--out` for the full sets.
const LABEL_CAP: usize = 64;

#[derive(Parser)]
#[command(name = "atlas", version, about = "Maximal nilpotent subsemigroups of finite semigroups")]
struct Cli {
    /// Worker threads for the parallel scans (1 runs everything sequentially).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family and write its Cayley table plus a labels sidecar.
    Build {
        spec: String,
        /// Directory for the `.cay` and `.labels` files.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Green's structure, radical and minimal idempotents as JSON.
    Analyze {
        spec: String,
        /// Treat this idempotent (label or index) as the zero.
        #[arg(long)]
        relative_zero: Option<String>,
    },
    /// Count and list the maximal nilpotent subsemigroups.
    Enumerate {
        spec: String,
        /// Only maxima of nilpotency class at most this bound.
        #[arg(long = "class")]
        class: Option<usize>,
        #[arg(long)]
        count_only: bool,
        #[arg(long)]
        json: bool,
        /// Write the full JSON listing to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        max_print: usize,
        /// Fall back to exhaustive search when no valid M exists.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        relative_zero: Option<String>,
    },
    /// Compare the classification with exhaustive search.
    OracleVerify {
        spec: String,
        #[arg(long = "class")]
        class: Option<usize>,
        #[arg(long)]
        relative_zero: Option<String>,
    },
    /// Rees matrix semigroup tools.
    Rees {
        #[command(subcommand)]
        command: ReesCommand,
    },
    /// Egg-box diagram export.
    Export {
        spec: String,
        /// Emit Graphviz DOT (the only format).
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        relative_zero: Option<String>,
    },
}

#[derive(Subcommand)]
enum ReesCommand {
    /// Search the reduced sandwich matrix for block normal forms.
    NormalForm {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::NoZero
            | Error::NotAGroup(_)
            | Error::NotIdempotent(_)
            | Error::IrregularSandwich(_)
            | Error::IrregularMatrix(_)
            | Error::NotInNormalForm(_)
            | Error::RadicalNonzero { .. }
            | Error::Violation(_)
            | Error::Internal(_) => 2,
            Error::NoValidM => 3,
            Error::BudgetExceeded(_) | Error::SearchBudgetExceeded { .. } => 4,
            _ => 1,
        };
        let message = match e {
            Error::NoValidM => "no valid set of minimal idempotents; rerun with --oracle for exhaustive search".into(),
            e => e.to_string(),
        };
        Failure { code, message }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = match configure_threads(cli.threads) {
        Ok(exec) => exec,
        Err(f) => return fail(f),
    };
    let result = budgets().and_then(|budgets| match cli.command {
        Command::Build { spec, out } => build(&spec, &out, exec),
        Command::Analyze { spec, relative_zero } => analyze(&spec, relative_zero.as_deref(), budgets, exec),
        Command::Enumerate {
            spec,
            class,
            count_only,
            json,
            out,
            max_print,
            oracle,
            relative_zero,
        } => {
            let s = load(&spec, relative_zero.as_deref(), exec)?;
            let opts = EnumerateOpts {
                class,
                count_only,
                json,
                out,
                max_print,
                oracle,
            };
            enumerate(s, &opts, budgets, exec)
        }
        Command::OracleVerify {
            spec,
            class,
            relative_zero,
        } => oracle_verify(load(&spec, relative_zero.as_deref(), exec)?, class, budgets, exec),
        Command::Rees {
            command: ReesCommand::NormalForm { file, json },
        } => rees_normal_form(&file, json, exec),
        Command::Export {
            spec,
            dot,
            relative_zero,
        } => {
            if !dot {
                return Err(usage("export needs a format; pass --dot"));
            }
            let s = load(&spec, relative_zero.as_deref(), exec)?;
            print!("{}", eggbox_dot(&s, &GreenData::compute(&s)?));
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => fail(f),
    }
}

fn fail(f: Failure) -> ExitCode {
    eprintln!("error: {}", f.message);
    ExitCode::from(f.code)
}

fn configure_threads(threads: Option<usize>) -> CliResult<Exec> {
    match threads {
        Some(0) => Err(usage("--threads must be positive")),
        Some(1) => Ok(Exec::Sequential),
        #[cfg(feature = "parallel")]
        Some(n) => {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| usage(format!("cannot start {n} threads: {e}")))?;
            Ok(Exec::Parallel)
        }
        #[cfg(not(feature = "parallel"))]
        Some(_) => Ok(Exec::Sequential),
        None => Ok(Exec::default()),
    }
}

/// `ATLAS_BUDGET` holds comma-separated `key=value` overrides with keys
/// `m` (candidate sets for M), `states` and `universe` (oracle limits).
fn budgets() -> CliResult<Budgets> {
    let mut b = Budgets::default();
    let Ok(raw) = std::env::var("ATLAS_BUDGET") else {
        return Ok(b);
    };
    for item in raw.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let bad = || usage(format!("ATLAS_BUDGET: cannot read `{item}`"));
        let (key, value) = item.split_once('=').ok_or_else(bad)?;
        let value: usize = value.trim().parse().map_err(|_| bad())?;
        match key.trim() {
            "m" => b.m_search = value,
            "states" => b.oracle.states = value,
            "universe" => b.oracle.universe = value,
            _ => return Err(bad()),
        }
    }
    Ok(b)
}

/// Builds a specifier, picking up a `.labels` sidecar for `table:` inputs
/// and optionally re-rooting at an idempotent treated as zero.
fn load(spec: &str, relative_zero: Option<&str>, exec: Exec) -> CliResult<Semigroup> {
    let parsed = FamilySpec::parse(spec)?;
    let mut s = parsed.build(&Bounds::default(), exec)?;
    if let FamilySpec::Table(path) = &parsed {
        let sidecar = Path::new(path).with_extension("labels");
        if s.labels().is_none() && sidecar.exists() {
            let text = std::fs::read_to_string(&sidecar)
                .map_err(|e| usage(format!("{}: {e}", sidecar.display())))?;
            let labels = cayley::parse_labels(&text, s.order())?;
            s = cayley::apply_labels(s, &labels);
        }
    }
    match relative_zero {
        None => Ok(s),
        Some(name) => {
            let e = element(&s, name)?;
            Ok(relative_zero_subsemigroup(&s, e)?.0)
        }
    }
}

fn element(s: &Semigroup, name: &str) -> CliResult<usize> {
    s.find_label(name)
        .or_else(|| name.parse().ok().filter(|&i| i < s.order()))
        .ok_or_else(|| usage(format!("no element `{name}`")))
}

fn analysis(s: Semigroup) -> CliResult<Analysis> {
    let hint = |s: &Semigroup| {
        let idem: Vec<String> = s.idempotents().iter().take(5).map(|&e| s.label(e)).collect();
        format!(
            "semigroup has no zero element; rerun with --relative-zero <idempotent> (e.g. one of: {})",
            idem.join(", ")
        )
    };
    if s.zero().is_none() {
        return Err(Failure {
            code: 2,
            message: hint(&s),
        });
    }
    Ok(Analysis::new(Arc::new(s))?)
}

fn slug(spec: &str) -> String {
    let name = spec.rsplit(['/', '\\']).next().unwrap_or(spec);
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect()
}

fn build(spec: &str, out: &Path, exec: Exec) -> CliResult<()> {
    let s = load(spec, None, exec)?;
    let stem = slug(spec);
    let io = |e: std::io::Error| usage(format!("{}: {e}", out.display()));
    std::fs::create_dir_all(out).map_err(io)?;
    let cay = out.join(format!("{stem}.cay"));
    let labels = out.join(format!("{stem}.labels"));
    std::fs::write(&cay, cayley::to_text(&s, false)).map_err(io)?;
    std::fs::write(&labels, cayley::labels_text(&s)).map_err(io)?;
    let show = |x: Option<usize>| match x {
        Some(i) => format!("{i} ({})", s.label(i)),
        None => "none".to_string(),
    };
    println!("order {}", s.order());
    println!("zero {}", show(s.zero()));
    println!("identity {}", show(s.identity()));
    println!("table {}", cay.display());
    println!("labels {}", labels.display());
    Ok(())
}

fn analyze(spec: &str, relative_zero: Option<&str>, budgets: Budgets, exec: Exec) -> CliResult<()> {
    let a = analysis(load(spec, relative_zero, exec)?)?;
    let search = a.find_m(budgets.m_search, exec);
    print_json(&a.report(Some(&search)))
}

fn print_json<T: Serialize>(value: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| usage(e.to_string()))?;
    println!("{text}");
    Ok(())
}

struct EnumerateOpts {
    class: Option<usize>,
    count_only: bool,
    json: bool,
    out: Option<PathBuf>,
    max_print: usize,
    oracle: bool,
}

#[derive(Serialize)]
struct Listing {
    mode: Mode,
    class_bound: Option<usize>,
    count: usize,
    subsemigroups: Vec<Entry>,
}

#[derive(Serialize)]
struct Entry {
    /// Per `D`-class of `M`, its ordered blocks of minimal-idempotent
    /// labels (absent in oracle mode).
    order: Option<Vec<Vec<Vec<String>>>>,
    size: usize,
    class: usize,
    elements: Option<Vec<String>>,
}

fn labels_of(s: &Semigroup, t: &ElementSet) -> Vec<String> {
    t.iter().map(|x| s.label(x)).collect()
}

fn listing(s: &Semigroup, e: &Enumeration, class_bound: Option<usize>, cap: Option<usize>) -> Listing {
    let subsemigroups = e
        .maxima
        .iter()
        .zip(&e.partitions)
        .zip(&e.classes)
        .map(|((t, p), &class)| Entry {
            order: p.clone(),
            size: t.len(),
            class,
            elements: cap.is_none_or(|c| t.len() <= c).then(|| labels_of(s, t)),
        })
        .collect();
    Listing {
        mode: e.mode,
        class_bound,
        count: e.maxima.len(),
        subsemigroups,
    }
}

fn enumerate(s: Semigroup, opts: &EnumerateOpts, budgets: Budgets, exec: Exec) -> CliResult<()> {
    let a = analysis(s)?;
    if opts.count_only {
        let count = match a.find_m(budgets.m_search, exec)?.found() {
            Some(m) => {
                let c = Classifier::new(&a, m, exec)?;
                match opts.class {
                    Some(b) => c.count_class_m(b)?,
                    None => c.count_maximal(),
                }
            }
            None if opts.oracle => {
                let maxima = match opts.class {
                    Some(b) => oracle::brute_class_m_maximal(&a.semigroup, a.zero, b, budgets.oracle)?,
                    None => oracle::brute_maximal_nilpotent(&a.semigroup, a.zero, budgets.oracle)?,
                };
                maxima.len() as u128
            }
            None => return Err(Error::NoValidM.into()),
        };
        println!("{count}");
        return Ok(());
    }

    let e = maximal_nilpotent(&a, opts.class, opts.oracle, budgets, exec)?;
    let s = &a.semigroup;
    if let Some(path) = &opts.out {
        let text = serde_json::to_string_pretty(&listing(s, &e, opts.class, None)).map_err(|e| usage(e.to_string()))?;
        std::fs::write(path, text + "\n").map_err(|err| usage(format!("{}: {err}", path.display())))?;
    }
    if opts.json {
        return print_json(&listing(s, &e, opts.class, Some(LABEL_CAP)));
    }
    let mode = match e.mode {
        Mode::Classified => "classified",
        Mode::Oracle => "oracle",
    };
    println!("count {} ({mode})", e.maxima.len());
    for (i, t) in e.maxima.iter().enumerate().take(opts.max_print) {
        let order = match &e.partitions[i] {
            Some(classes) => {
                let chains: Vec<String> = classes
                    .iter()
                    .map(|blocks| {
                        let blocks: Vec<String> = blocks.iter().map(|b| format!("{{{}}}", b.join(" "))).collect();
                        blocks.join(" < ")
                    })
                    .collect();
                format!(" order {}", chains.join(" | "))
            }
            None => String::new(),
        };
        println!("#{} size {} class {}{order}", i + 1, t.len(), e.classes[i]);
        if t.len() <= LABEL_CAP {
            println!("   {}", labels_of(s, t).join(" "));
        }
    }
    if e.maxima.len() > opts.max_print {
        println!("... {} more", e.maxima.len() - opts.max_print);
    }
    Ok(())
}

fn oracle_verify(s: Semigroup, class: Option<usize>, budgets: Budgets, exec: Exec) -> CliResult<()> {
    let a = analysis(s)?;
    let classified = maximal_nilpotent(&a, class, false, budgets, exec)?;
    let mut ours = classified.maxima;
    ours.sort();
    let brute = match class {
        Some(b) => oracle::brute_class_m_maximal(&a.semigroup, a.zero, b, budgets.oracle)?,
        None => oracle::brute_maximal_nilpotent(&a.semigroup, a.zero, budgets.oracle)?,
    };
    println!("classified {}", ours.len());
    println!("oracle {}", brute.len());
    if ours == brute {
        println!("match");
        return Ok(());
    }
    let s = &a.semigroup;
    let (side, first) = match ours.iter().find(|t| !brute.contains(t)) {
        Some(t) => ("classified only", t),
        None => ("oracle only", brute.iter().find(|t| !ours.contains(t)).expect("sets differ")),
    };
    println!("mismatch: {side}: {{{}}}", labels_of(s, first).join(" "));
    Err(Failure {
        code: 2,
        message: "classification disagrees with exhaustive search".into(),
    })
}

#[derive(Serialize)]
struct NormalFormReport {
    reduced: BoolMatrix,
    group_order: usize,
    witnesses: Vec<WitnessReport>,
    /// More than one block size admits a witness.
    multiple_k: bool,
}

#[derive(Serialize)]
struct WitnessReport {
    k: usize,
    row_perm: Vec<usize>,
    col_perm: Vec<usize>,
    a: BoolMatrix,
    b: BoolMatrix,
    pstar: BoolMatrix,
    zeros: usize,
    t_size: usize,
}

fn rows_text(m: &BoolMatrix) -> String {
    if m.rows() == 0 || m.cols() == 0 {
        return format!("  ({}x{})\n", m.rows(), m.cols());
    }
    m.to_rows()
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(u8::to_string).collect();
            format!("  {}\n", cells.join(" "))
        })
        .collect()
}

fn rees_normal_form(file: &Path, json: bool, exec: Exec) -> CliResult<()> {
    let text = std::fs::read_to_string(file).map_err(|e| usage(format!("{}: {e}", file.display())))?;
    let r = ReesMatrixSemigroup::parse(&text)?;
    let full = Arc::new(r.to_semigroup(exec)?);
    let reduced = r.reduce_sandwich();
    let mut witnesses = Vec::new();
    for nf in normal_form_search(&reduced)? {
        let star = pstar(&nf)?;
        let t = r.maximal_t(full.clone(), &nf)?;
        witnesses.push(WitnessReport {
            k: nf.k,
            row_perm: nf.row_perm,
            col_perm: nf.col_perm,
            a: nf.a,
            b: nf.b,
            zeros: star.zero_count(),
            pstar: star,
            t_size: t.len(),
        });
    }
    let report = NormalFormReport {
        reduced,
        group_order: r.group().order(),
        multiple_k: witnesses.len() > 1,
        witnesses,
    };
    if json {
        return print_json(&report);
    }
    print!("reduced sandwich matrix\n{}", rows_text(&report.reduced));
    if report.witnesses.is_empty() {
        println!("no block normal form");
    }
    for w in &report.witnesses {
        println!("k {}", w.k);
        println!("rows {:?}", w.row_perm);
        println!("columns {:?}", w.col_perm);
        print!("A\n{}B\n{}P*\n{}", rows_text(&w.a), rows_text(&w.b), rows_text(&w.pstar));
        println!("f {}", w.zeros);
        println!("|T| {} = 1 + {}*{}", w.t_size, w.zeros, report.group_order);
    }
    if report.multiple_k {
        println!("note: several block sizes admit a witness");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use atlas::oracle::OracleBudget;
    use atlas::structure::DEFAULT_M_BUDGET;

    use super::*;

    #[test]
    fn slugs_are_file_safe() {
        assert_eq!(slug("is:3"), "is_3");
        assert_eq!(slug("table:dir/foo.cay"), "foo_cay");
    }

    #[test]
    fn error_codes() {
        assert_eq!(Failure::from(Error::NoZero).code, 2);
        assert_eq!(Failure::from(Error::NoValidM).code, 3);
        assert_eq!(Failure::from(Error::SearchBudgetExceeded { budget: 1 }).code, 4);
        assert_eq!(Failure::from(Error::UnknownFamily("x".into())).code, 1);
    }

    #[test]
    fn default_budgets_without_env() {
        assert_eq!(Budgets::default().m_search, DEFAULT_M_BUDGET);
        assert_eq!(Budgets::default().oracle, OracleBudget::default());
    }
}
