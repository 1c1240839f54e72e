//! `margolis` - exact F2 Margolis homology of tmf, its smash powers, and
//! (BZ/2^k)_+, with a brute-force oracle and a structural basis route that
//! cross-check each other.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use margolis_cli::report::{BasisJson, ElementJson, ErrorJson, HomologyJson, VerifyJson};
use margolis_cli::table;
use margolis_cli::verify::{run_suite, Suite};
use margolis_core::basis::{assemble_tmf_basis, transport_basis};
use margolis_core::f2::SpaceDescriptor;
use margolis_core::lss::{build_mj, tx_poly_to_zeta, IndexSet};
use margolis_core::oracle::{build_operator, finite_module_homology, finite_report, ZetaSpace};
use margolis_core::spaces::{bz2_basis, smash_basis, Bz2Space, SmashSpace};
use margolis_core::OperatorId;

#[derive(Parser)]
#[command(
    name = "margolis",
    version,
    about = "Exact F2 Margolis homology of tmf, its smash powers, and (BZ/2^k)+"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-degree homology dimensions and representatives
    Homology(HomologyArgs),
    /// Basis listings: B_[n], B_J, or a degree-filtered assembled basis
    Basis(BasisArgs),
    /// Run a verification suite; nonzero exit on any failure
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum SpaceArg {
    Tmf,
    E,
    Smash,
    Bz2,
    M,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum OpArg {
    Q0,
    Q1,
    Q2,
    P21,
}

impl OpArg {
    fn to_core(self) -> OperatorId {
        match self {
            OpArg::Q0 => OperatorId::Q0,
            OpArg::Q1 => OperatorId::Q1,
            OpArg::Q2 => OperatorId::Q2,
            OpArg::P21 => OperatorId::P21,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum MethodArg {
    Oracle,
    Basis,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum OutputArg {
    Table,
    Json,
}

#[derive(Args)]
struct HomologyArgs {
    /// Space to compute over
    #[arg(long, ignore_case = true)]
    space: SpaceArg,
    /// Operator acting as the differential
    #[arg(long, ignore_case = true)]
    op: OpArg,
    /// Degree truncation (required except for --space m)
    #[arg(long)]
    max_degree: Option<u32>,
    /// Smash power (with --space smash)
    #[arg(long)]
    r: Option<u32>,
    /// Number of BZ/2 factors (with --space bz2)
    #[arg(long)]
    k: Option<u32>,
    /// Index set, comma separated (with --space m), e.g. --J 2,4,6,9
    #[arg(long = "J", value_delimiter = ',')]
    j: Option<Vec<u32>>,
    /// oracle = per-degree matrices; basis = structural counts; both = compare
    #[arg(long, ignore_case = true, default_value = "oracle")]
    method: MethodArg,
    #[arg(long, ignore_case = true, default_value = "table")]
    output: OutputArg,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Per-degree parallelism for the oracle
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Cap for representative strings in table output
    #[arg(long, default_value_t = 72)]
    rep_width: usize,
}

#[derive(Args)]
struct BasisArgs {
    /// Standard level: list B_[n]
    #[arg(long)]
    n: Option<u32>,
    /// Index set: list B_J, e.g. --J 2,4,6,9
    #[arg(long = "J", value_delimiter = ',')]
    j: Option<Vec<u32>>,
    /// Assembled listing for a space (tmf, smash, bz2); needs --max-degree
    #[arg(long, ignore_case = true)]
    space: Option<SpaceArg>,
    #[arg(long)]
    max_degree: Option<u32>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, ignore_case = true, default_value = "table")]
    output: OutputArg,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 72)]
    rep_width: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which suite to run
    #[arg(value_enum, ignore_case = true)]
    suite: Suite,
    /// Seed for the randomized sampling passes only
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, ignore_case = true, default_value = "table")]
    output: OutputArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

struct UsageError(String);

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Homology(args) => cmd_homology(args),
        Command::Basis(args) => cmd_basis(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(code) => code,
        Err(UsageError(message)) => {
            let err = ErrorJson::new("usage", message);
            eprintln!("{}", serde_json::to_string(&err).expect("error serializes"));
            ExitCode::from(2)
        }
    }
}

fn emit(text: String, out: &Option<PathBuf>) -> ExitCode {
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                let err = ErrorJson::new("io", format!("cannot write {}: {}", path.display(), e));
                eprintln!("{}", serde_json::to_string(&err).expect("error serializes"));
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        None => {
            print!("{}", text);
            ExitCode::SUCCESS
        }
    }
}

fn render_homology(j: &HomologyJson, output: OutputArg, rep_width: usize) -> String {
    match output {
        OutputArg::Json => {
            let mut s = serde_json::to_string_pretty(j).expect("report serializes");
            s.push('\n');
            s
        }
        OutputArg::Table => table::homology_table(j, rep_width),
    }
}

/// Structural per-degree counts and class renderings for the basis method.
fn structural_counts(
    args: &HomologyArgs,
    through: u32,
) -> Result<(Vec<usize>, Vec<Vec<String>>), UsageError> {
    let mut counts = vec![0usize; through as usize + 1];
    let mut reps = vec![Vec::new(); through as usize + 1];
    match args.space {
        SpaceArg::Tmf => {
            for e in assemble_tmf_basis(through) {
                counts[e.degree as usize] += 1;
                reps[e.degree as usize].push(tx_poly_to_zeta(&e.value).to_string());
            }
        }
        SpaceArg::Smash => {
            let r = args.r.ok_or_else(|| UsageError("--space smash needs --r".into()))?;
            for e in smash_basis(r, through) {
                counts[e.single.degree as usize] += 1;
                reps[e.single.degree as usize].push(e.render_slots());
            }
        }
        SpaceArg::Bz2 => {
            let k = args.k.ok_or_else(|| UsageError("--space bz2 needs --k".into()))?;
            for e in bz2_basis(k, through) {
                counts[e.single.degree as usize] += 1;
                reps[e.single.degree as usize].push(e.render());
            }
        }
        SpaceArg::M => {
            let j = parse_index_set(args.j.as_deref().unwrap_or(&[]))?;
            for b in transport_basis(j) {
                let l = b.reduced_length() as usize;
                if l < counts.len() {
                    counts[l] += 1;
                    reps[l].push(b.value.to_string());
                }
            }
        }
        SpaceArg::E => {
            return Err(UsageError(
                "--method basis/both is not available for --space e".into(),
            ));
        }
    }
    Ok((counts, reps))
}

fn parse_index_set(indices: &[u32]) -> Result<IndexSet, UsageError> {
    if indices.is_empty() {
        return Err(UsageError("--J needs a non-empty index list".into()));
    }
    let mut seen = IndexSet::EMPTY;
    for &i in indices {
        if !(1..=64).contains(&i) {
            return Err(UsageError(format!("index {} out of range 1..=64", i)));
        }
        if seen.contains(i) {
            return Err(UsageError(format!("index {} repeated in --J", i)));
        }
        seen = seen.union(IndexSet::single(i));
    }
    Ok(seen)
}

fn cmd_homology(args: HomologyArgs) -> Result<ExitCode, UsageError> {
    let op = args.op.to_core();
    if matches!(args.method, MethodArg::Basis | MethodArg::Both)
        && args.space != SpaceArg::M
        && op != OperatorId::P21
    {
        return Err(UsageError(
            "--method basis/both needs --op p21 (the structural basis is for P21)".into(),
        ));
    }

    // the finite modules M_J are exact, no truncation
    if args.space == SpaceArg::M {
        let j = parse_index_set(args.j.as_deref().unwrap_or(&[]))?;
        if !matches!(op, OperatorId::Q1 | OperatorId::P21) {
            return Err(UsageError(
                "M_J is a module over Lambda(Q1, P21); use --op q1 or --op p21".into(),
            ));
        }
        if args.method != MethodArg::Oracle && op != OperatorId::P21 {
            return Err(UsageError(
                "--method basis/both on M_J needs --op p21".into(),
            ));
        }
        let module = build_mj(j).to_finite_module();
        let homology =
            finite_module_homology(&module, op).map_err(|e| UsageError(e.to_string()))?;
        let report = finite_report(&module, &homology);
        let json = match args.method {
            MethodArg::Oracle => HomologyJson::from_oracle(&report),
            MethodArg::Basis => {
                let (counts, reps) = structural_counts(&args, report.valid_through)?;
                HomologyJson::from_basis_counts(
                    report.space.clone(),
                    op.label(),
                    report.valid_through,
                    &counts,
                    reps,
                )
            }
            MethodArg::Both => {
                let (counts, _) = structural_counts(&args, report.valid_through)?;
                HomologyJson::comparison(&report, &counts)
            }
        };
        let mismatch = json.all_match == Some(false);
        let text = render_homology(&json, args.output, args.rep_width);
        let code = emit(text, &args.out);
        return Ok(if mismatch && code == ExitCode::SUCCESS {
            ExitCode::from(1)
        } else {
            code
        });
    }

    let max_degree = args
        .max_degree
        .ok_or_else(|| UsageError("--max-degree is required for this space".into()))?;

    if args.method == MethodArg::Basis {
        let (counts, reps) = structural_counts(&args, max_degree)?;
        let label = match args.space {
            SpaceArg::Tmf => SpaceDescriptor::T.label(),
            SpaceArg::Smash => SpaceDescriptor::SmashT {
                r: args.r.unwrap_or(1),
            }
            .label(),
            SpaceArg::Bz2 => SpaceDescriptor::Bz2 {
                k: args.k.unwrap_or(1),
            }
            .label(),
            _ => unreachable!("basis method rejected for other spaces above"),
        };
        let json = HomologyJson::from_basis_counts(label, op.label(), max_degree, &counts, reps);
        let text = render_homology(&json, args.output, args.rep_width);
        return Ok(emit(text, &args.out));
    }

    let report = match args.space {
        SpaceArg::Tmf => {
            let gop = build_operator(ZetaSpace(SpaceDescriptor::T), op, max_degree)
                .map_err(|e| UsageError(e.to_string()))?;
            margolis_cli::report::run_homology(&gop, args.jobs)
        }
        SpaceArg::E => {
            let gop = build_operator(ZetaSpace(SpaceDescriptor::E), op, max_degree)
                .map_err(|e| UsageError(e.to_string()))?;
            margolis_cli::report::run_homology(&gop, args.jobs)
        }
        SpaceArg::Smash => {
            let r = args.r.ok_or_else(|| UsageError("--space smash needs --r".into()))?;
            if r == 0 {
                return Err(UsageError("--r must be at least 1".into()));
            }
            let gop = build_operator(SmashSpace { r }, op, max_degree)
                .map_err(|e| UsageError(e.to_string()))?;
            margolis_cli::report::run_homology(&gop, args.jobs)
        }
        SpaceArg::Bz2 => {
            let k = args.k.ok_or_else(|| UsageError("--space bz2 needs --k".into()))?;
            if k == 0 {
                return Err(UsageError("--k must be at least 1".into()));
            }
            let gop = build_operator(Bz2Space { k }, op, max_degree)
                .map_err(|e| UsageError(e.to_string()))?;
            margolis_cli::report::run_homology(&gop, args.jobs)
        }
        SpaceArg::M => unreachable!("handled above"),
    };

    let json = match args.method {
        MethodArg::Oracle => HomologyJson::from_oracle(&report),
        MethodArg::Both => {
            let (counts, _) = structural_counts(&args, report.valid_through)?;
            HomologyJson::comparison(&report, &counts)
        }
        MethodArg::Basis => unreachable!("handled above"),
    };
    let mismatch = json.all_match == Some(false);
    let text = render_homology(&json, args.output, args.rep_width);
    let code = emit(text, &args.out);
    Ok(if mismatch && code == ExitCode::SUCCESS {
        ExitCode::from(1)
    } else {
        code
    })
}

fn basis_elements_json(j: IndexSet) -> BasisJson {
    let elements = transport_basis(j)
        .into_iter()
        .map(|b| ElementJson {
            tx: b.value.to_string(),
            zeta: tx_poly_to_zeta(&b.value).to_string(),
            degree: b.degree(),
            reduced_length: b.reduced_length(),
            home: None,
            s_indices: None,
        })
        .collect();
    BasisJson {
        j: Some(j.to_vec()),
        space: None,
        max_degree: None,
        elements,
        counts_per_degree: None,
    }
}

fn cmd_basis(args: BasisArgs) -> Result<ExitCode, UsageError> {
    let modes = usize::from(args.n.is_some())
        + usize::from(args.j.is_some())
        + usize::from(args.space.is_some());
    if modes != 1 {
        return Err(UsageError(
            "give exactly one of --n, --J, or --space with --max-degree".into(),
        ));
    }
    let json = if let Some(n) = args.n {
        if n > 32 {
            return Err(UsageError("--n beyond 32 is not supported".into()));
        }
        basis_elements_json(IndexSet::range(1, n))
    } else if let Some(indices) = &args.j {
        basis_elements_json(parse_index_set(indices)?)
    } else {
        let space = args.space.expect("mode checked above");
        let max_degree = args
            .max_degree
            .ok_or_else(|| UsageError("--space mode needs --max-degree".into()))?;
        let (label, elements, counts) = match space {
            SpaceArg::Tmf => {
                let assembled = assemble_tmf_basis(max_degree);
                let counts = margolis_core::basis::counts_per_degree(&assembled, max_degree);
                let elements: Vec<ElementJson> = assembled
                    .into_iter()
                    .map(|e| ElementJson {
                        tx: e.value.to_string(),
                        zeta: tx_poly_to_zeta(&e.value).to_string(),
                        degree: e.degree,
                        reduced_length: e.reduced_length,
                        home: Some(e.home.to_vec()),
                        s_indices: Some(e.s_indices.to_vec()),
                    })
                    .collect();
                (SpaceDescriptor::T.label(), elements, counts)
            }
            SpaceArg::Smash => {
                let r = args.r.ok_or_else(|| UsageError("--space smash needs --r".into()))?;
                let basis = smash_basis(r, max_degree);
                let mut counts = vec![0usize; max_degree as usize + 1];
                let elements: Vec<ElementJson> = basis
                    .into_iter()
                    .map(|e| {
                        counts[e.single.degree as usize] += 1;
                        ElementJson {
                            tx: e.single.value.to_string(),
                            zeta: e.render_slots(),
                            degree: e.single.degree,
                            reduced_length: e.single.reduced_length,
                            home: Some(e.single.home.to_vec()),
                            s_indices: Some(e.single.s_indices.to_vec()),
                        }
                    })
                    .collect();
                (SpaceDescriptor::SmashT { r }.label(), elements, counts)
            }
            SpaceArg::Bz2 => {
                let k = args.k.ok_or_else(|| UsageError("--space bz2 needs --k".into()))?;
                let basis = bz2_basis(k, max_degree);
                let mut counts = vec![0usize; max_degree as usize + 1];
                let elements: Vec<ElementJson> = basis
                    .into_iter()
                    .map(|e| {
                        counts[e.single.degree as usize] += 1;
                        ElementJson {
                            tx: e.single.value.to_string(),
                            zeta: e.render(),
                            degree: e.single.degree,
                            reduced_length: e.single.reduced_length,
                            home: Some(e.single.home.to_vec()),
                            s_indices: Some(e.single.s_indices.to_vec()),
                        }
                    })
                    .collect();
                (SpaceDescriptor::Bz2 { k }.label(), elements, counts)
            }
            SpaceArg::E | SpaceArg::M => {
                return Err(UsageError(
                    "basis listings exist for tmf, smash, bz2 (or use --n / --J)".into(),
                ));
            }
        };
        BasisJson {
            j: None,
            space: Some(label),
            max_degree: Some(max_degree),
            elements,
            counts_per_degree: Some(counts),
        }
    };
    let text = match args.output {
        OutputArg::Json => {
            let mut s = serde_json::to_string_pretty(&json).expect("listing serializes");
            s.push('\n');
            s
        }
        OutputArg::Table => table::basis_table(&json, args.rep_width),
    };
    Ok(emit(text, &args.out))
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, UsageError> {
    let checks = run_suite(args.suite, args.seed);
    let pass = checks.iter().all(|c| c.pass);
    let json = VerifyJson {
        suite: args.suite.label().to_string(),
        seed: args.seed,
        checks: checks
            .into_iter()
            .map(|c| margolis_cli::report::CheckJson {
                name: c.name,
                pass: c.pass,
                detail: c.detail,
            })
            .collect(),
        pass,
    };
    let text = match args.output {
        OutputArg::Json => {
            let mut s = serde_json::to_string_pretty(&json).expect("verify serializes");
            s.push('\n');
            s
        }
        OutputArg::Table => table::verify_table(&json),
    };
    let code = emit(text, &args.out);
    Ok(if !pass && code == ExitCode::SUCCESS {
        ExitCode::from(1)
    } else {
        code
    })
}
