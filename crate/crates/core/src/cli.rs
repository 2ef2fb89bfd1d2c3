//! The `nearsemi` command line.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::{Element, FiniteAlgebra, Homomorphism};
use crate::axioms::{admits, check_axioms, Class};
use crate::cb::{self, CbInstance, CbTrace};
use crate::center::{self, Method};
use crate::config::{Limits, DEFAULT_CB_PAIR_CAP, DEFAULT_IDEAL_THRESHOLD, DEFAULT_MAX_SIZE};
use crate::congruence::{self, werner_comparison};
use crate::dot;
use crate::elemset::ElementSet;
use crate::error::{Error, Result};
use crate::format::{self, Document};
use crate::ideal::{self, IdealLattice};
use crate::mv;
use crate::report::{Check, Report, Section};
use crate::search::{self, EnumerationTask, ResumeToken};

/// Largest ideal lattice whose every subfamily is checked for join distributivity.
pub const FAMILY_CAP: usize = 16;

#[derive(Debug, Parser)]
#[command(name = "nearsemi", version, about = "Finite near-semiring workbench")]
pub struct Cli {
    /// Worker threads for the parallel engines (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Largest algebra any command will analyse.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_SIZE)]
    pub max_size: usize,
    /// Largest algebra for which every subset is scanned.
    #[arg(long, global = true, default_value_t = DEFAULT_IDEAL_THRESHOLD)]
    pub threshold: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LatticeKind {
    Con,
    Id,
    Ce,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the axioms of a class (default: the file's `kind`).
    Check {
        file: PathBuf,
        #[arg(long)]
        class: Option<Class>,
    },
    /// List all congruences with Mal'cev and regularity checks.
    Congruences { file: PathBuf },
    /// List all ideals with lattice checks.
    Ideals { file: PathBuf },
    /// Central elements and the laws they satisfy.
    Center {
        file: PathBuf,
        #[arg(long, default_value = "both")]
        method: Method,
    },
    /// Split along a central element, or a partition of unity.
    Decompose {
        file: PathBuf,
        #[arg(long, conflicts_with = "parts", required_unless_present = "parts")]
        element: Option<String>,
        /// Comma-separated central elements, e.g. `(1,0),(0,1)`.
        #[arg(long)]
        parts: Option<String>,
    },
    /// The ideal generated by one element.
    PrincipalIdeal {
        file: PathBuf,
        #[arg(long)]
        element: String,
    },
    /// Compare the semiring ideal characterizations with the ideal oracle.
    Claims { file: PathBuf },
    /// Translate a Łukasiewicz semiring into an MV-algebra.
    ToMv {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Translate an MV-algebra into a Łukasiewicz semiring.
    FromMv {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Translate there and back and compare tables.
    Roundtrip { file: PathBuf },
    /// Run the Cantor–Bernstein construction.
    Cb {
        file_a: PathBuf,
        file_b: PathBuf,
        #[arg(long, requires = "beta", conflicts_with = "search")]
        gamma: Option<PathBuf>,
        #[arg(long, requires = "gamma")]
        beta: Option<PathBuf>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long, required_unless_present = "gamma")]
        search: bool,
    },
    /// Enumerate models up to isomorphism.
    Enumerate {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        class: Class,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        max_results: Option<usize>,
        #[arg(long)]
        resume: Option<ResumeToken>,
    },
    /// Hasse diagram of a lattice in DOT.
    Dot {
        file: PathBuf,
        #[arg(long)]
        lattice: LatticeKind,
    },
}

/// Parses `args` (program name first) and runs the command.
///
/// Returns the text to print and the exit status: 0 when every check
/// passed, 1 when something failed or disagreed, 2 on input errors.
pub fn run<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (e.to_string(), code);
        }
    };
    let echo = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    let limits = Limits {
        max_size: cli.max_size,
        ideal_threshold: cli.threshold,
        cb_pair_cap: DEFAULT_CB_PAIR_CAP,
    };
    let result = match cli.threads {
        Some(0) => Err(Error::Usage("--threads must be positive".into())),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::Usage(e.to_string()))
            .and_then(|pool| pool.install(|| execute(&cli.command, &echo, &limits))),
        None => execute(&cli.command, &echo, &limits),
    };
    match result {
        Ok(out) => out,
        Err(e) => (format!("error: {e}\n"), 2),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("cannot read `{}`: {e}", path.display())))
}

fn load(path: &Path, limits: &Limits) -> Result<Document> {
    let text = read(path)?;
    let doc = format::parse(&text).map_err(|e| match e {
        Error::Parse { line, col, message } => {
            Error::Usage(format!("{}:{line}:{col}: {message}", path.display()))
        }
        other => other,
    })?;
    let size = match &doc {
        Document::Algebra { algebra, .. } => algebra.size(),
        Document::Mv(m) => m.size(),
    };
    limits.guard(size)?;
    Ok(doc)
}

fn load_algebra(path: &Path, limits: &Limits) -> Result<(Class, FiniteAlgebra)> {
    match load(path, limits)? {
        Document::Algebra { class, algebra } => Ok((class, algebra)),
        Document::Mv(_) => Err(Error::Usage(format!(
            "`{}` is an MV-algebra; this command needs a near semiring",
            path.display()
        ))),
    }
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("cannot write `{}`: {e}", path.display())))
}

fn finish(report: Report) -> (String, i32) {
    let code = report.exit_code();
    (report.render(), code)
}

fn set_line(alg: &FiniteAlgebra, s: &ElementSet) -> String {
    s.render(alg)
}

fn map_lines(h: &Homomorphism) -> Vec<String> {
    h.source()
        .elements()
        .map(|x| {
            format!(
                "{} -> {}",
                h.source().label(x),
                h.target().label(h.apply(x))
            )
        })
        .collect()
}

/// Splits at commas outside parentheses.
fn split_top_level(list: &str) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut depth = 0usize;
    for c in list.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(String::new());
                continue;
            }
            _ => {}
        }
        out.last_mut().expect("nonempty").push(c);
    }
    out
}

fn execute(cmd: &Command, echo: &str, limits: &Limits) -> Result<(String, i32)> {
    let mut report = Report::new(echo);
    match cmd {
        Command::Check { file, class } => match load(file, limits)? {
            Document::Algebra {
                class: kind,
                algebra,
            } => {
                let class = class.unwrap_or(kind);
                let axioms = check_axioms(&algebra, class);
                let mut s = Section::new(format!("axioms {class}"));
                s.line(format!("size = {}", algebra.size()));
                s.checks(axioms.checks(&algebra));
                report.push(s);
            }
            Document::Mv(m) => {
                let mut s = Section::new("axioms mv");
                s.line(format!("size = {}", m.size()));
                s.checks(mv::mv_checks(&m));
                report.push(s);
            }
        },
        Command::Congruences { file } => {
            let (_, alg) = load_algebra(file, limits)?;
            congruences_report(&mut report, &alg, limits)?;
        }
        Command::Ideals { file } => {
            let (_, alg) = load_algebra(file, limits)?;
            let lat = ideal::all_ideals(&alg, limits)?;
            ideals_sections(&mut report, &alg, &lat);
            if admits(&alg, Class::LukRs) && alg.size() <= limits.ideal_threshold {
                let mut s = Section::new("mv ideals");
                s.check(mv::ideal_correspondence(&alg, limits)?);
                report.push(s);
            }
        }
        Command::Center { file, method } => {
            let (_, alg) = load_algebra(file, limits)?;
            center_report(&mut report, &alg, *method, limits)?;
        }
        Command::Decompose {
            file,
            element,
            parts,
        } => {
            let (_, alg) = load_algebra(file, limits)?;
            check_axioms(&alg, Class::Inrs).require(&alg)?;
            if let Some(e) = element {
                let e = alg.resolve(e)?;
                let d = center::decompose(&alg, e, limits)?;
                let mut s = Section::new("factors");
                let list = |iv: &center::IntervalAlgebra| {
                    let items: Vec<String> = iv.elements.iter().map(|&x| alg.label(x)).collect();
                    format!("[{}]", items.join(", "))
                };
                s.line(format!("[0, {}] = {}", alg.label(e), list(&d.factor)));
                s.line(format!(
                    "[0, {}] = {}",
                    alg.label(alg.alpha(e)),
                    list(&d.cofactor)
                ));
                report.push(s);
                let mut s = Section::new("isomorphism");
                for x in alg.elements() {
                    let (u, v) = (alg.mul(e, x), alg.mul(alg.alpha(e), x));
                    s.line(format!(
                        "{} -> ({}, {})",
                        alg.label(x),
                        alg.label(u),
                        alg.label(v)
                    ));
                }
                s.check(Check::from_witness(
                    "decompose:isomorphism",
                    (!d.iso.is_bijective()).then(|| "pair map is not bijective".into()),
                ));
                report.push(s);
            } else if let Some(parts) = parts {
                let parts: Vec<Element> = split_top_level(parts)
                    .iter()
                    .map(|p| alg.resolve(p))
                    .collect::<Result<_>>()?;
                let iso = cb::partition_decomposition(&alg, &parts, limits)?;
                let mut s = Section::new("partition of unity");
                let names: Vec<String> = parts.iter().map(|&p| alg.label(p)).collect();
                s.line(format!("parts = [{}]", names.join(", ")));
                s.lines.extend(map_lines(&iso));
                s.check(Check::from_witness(
                    "partition:isomorphism",
                    (!iso.is_bijective()).then(|| "decomposition map is not bijective".into()),
                ));
                report.push(s);
            }
        }
        Command::PrincipalIdeal { file, element } => {
            let (_, alg) = load_algebra(file, limits)?;
            check_axioms(&alg, Class::LukNrs).require(&alg)?;
            let a = alg.resolve(element)?;
            let p = ideal::principal_ideal(&alg, a);
            let generated =
                ideal::generate_ideal(&alg, &ElementSet::from_elements(alg.size(), [a]));
            let mut s = Section::new(format!("principal ideal of {}", alg.label(a)));
            s.line(format!(
                "I({}) = {}",
                alg.label(a),
                set_line(&alg, &p.ideal)
            ));
            s.line(format!(
                "polynomial images = {}",
                set_line(&alg, &p.polynomial_images)
            ));
            s.check(Check::from_witness(
                "principal-ideal:generated",
                (generated != p.ideal).then(|| {
                    format!(
                        "kernel {} vs generated {}",
                        p.ideal.render(&alg),
                        generated.render(&alg)
                    )
                }),
            ));
            s.check(Check::from_witness(
                "principal-ideal:polynomial",
                (p.polynomial_images != p.ideal).then(|| {
                    format!(
                        "kernel {} vs polynomial images {}",
                        p.ideal.render(&alg),
                        p.polynomial_images.render(&alg)
                    )
                }),
            ));
            report.push(s);
        }
        Command::Claims { file } => {
            let (_, alg) = load_algebra(file, limits)?;
            let checks = ideal::semiring_claims_report(&alg, limits)?;
            let mut s = Section::new("claims");
            if alg.size() > limits.ideal_threshold {
                s.line(format!(
                    "subset claims skipped: size {} exceeds threshold {}",
                    alg.size(),
                    limits.ideal_threshold
                ));
            }
            s.checks(checks);
            report.push(s);
        }
        Command::ToMv { file, out } => {
            let (_, alg) = load_algebra(file, limits)?;
            let m = mv::to_mv(&alg)?;
            let text = format::serialize_mv(&m);
            let mut s = Section::new("mv document");
            s.lines.extend(text.lines().map(String::from));
            s.checks(mv::mv_checks(&m));
            report.push(s);
            if let Some(out) = out {
                write(out, &text)?;
            }
        }
        Command::FromMv { file, out } => {
            let m = match load(file, limits)? {
                Document::Mv(m) => m,
                Document::Algebra { .. } => {
                    return Err(Error::Usage(format!(
                        "`{}` is not an MV-algebra (`kind = mv`)",
                        file.display()
                    )))
                }
            };
            let alg = mv::from_mv(&m)?;
            let text = format::serialize_algebra(Class::LukRs, &alg);
            let mut s = Section::new("semiring document");
            s.lines.extend(text.lines().map(String::from));
            s.checks(check_axioms(&alg, Class::LukRs).checks(&alg));
            report.push(s);
            if let Some(out) = out {
                write(out, &text)?;
            }
        }
        Command::Roundtrip { file } => {
            let (title, checks) = match load(file, limits)? {
                Document::Algebra { algebra, .. } => ("R(M(A))", mv::roundtrip_algebra(&algebra)?),
                Document::Mv(m) => ("M(R(B))", mv::roundtrip_mv(&m)?),
            };
            let mut s = Section::new(title);
            s.checks(checks);
            report.push(s);
        }
        Command::Cb {
            file_a,
            file_b,
            gamma,
            beta,
            a,
            b,
            search,
        } => {
            let (_, a_alg) = load_algebra(file_a, limits)?;
            let (_, b_alg) = load_algebra(file_b, limits)?;
            if *search {
                let found = cb::cb_search(&a_alg, &b_alg, limits)?;
                let mut s = Section::new("search");
                s.lines.extend(found.lines.iter().cloned());
                report.push(s);
                if let Some((inst, trace, iso)) = &found.found {
                    cb_sections(&mut report, inst, trace, Ok(iso));
                }
            } else {
                let (Some(gamma), Some(beta)) = (gamma, beta) else {
                    return Err(Error::Usage(
                        "cb needs --gamma and --beta, or --search".into(),
                    ));
                };
                let a = a.as_deref().map_or(Ok(a_alg.one()), |r| a_alg.resolve(r))?;
                let b = b.as_deref().map_or(Ok(b_alg.one()), |r| b_alg.resolve(r))?;
                let g = format::parse_map(&read(gamma)?, b_alg.size())?;
                let bt = format::parse_map(&read(beta)?, a_alg.size())?;
                let inst = CbInstance::new(a_alg, b_alg, a, b, &g, &bt)?;
                match cb::cb_isomorphism(&inst) {
                    Ok((trace, iso)) => cb_sections(&mut report, &inst, &trace, Ok(&iso)),
                    Err(e) => {
                        let trace = cb::cb_sequences(&inst);
                        cb_sections(&mut report, &inst, &trace, Err(e.to_string()));
                    }
                }
            }
        }
        Command::Enumerate {
            size,
            class,
            out,
            max_results,
            resume,
        } => return enumerate_report(report, *size, *class, out.as_deref(), *max_results, *resume),
        Command::Dot { file, lattice } => {
            let (_, alg) = load_algebra(file, limits)?;
            let text = match lattice {
                LatticeKind::Con => {
                    dot::congruence_dot(&alg, &congruence::all_congruences(&alg, limits)?)
                }
                LatticeKind::Id => dot::ideal_dot(&alg, &ideal::all_ideals(&alg, limits)?),
                LatticeKind::Ce => dot::center_dot(&alg, &center::center(&alg, limits)?.central),
            };
            return Ok((text, 0));
        }
    }
    Ok(finish(report))
}

fn congruences_report(report: &mut Report, alg: &FiniteAlgebra, limits: &Limits) -> Result<()> {
    let cons = congruence::all_congruences(alg, limits)?;
    let mut s = Section::new("congruences");
    s.line(format!("count = {}", cons.len()));
    for (i, c) in cons.iter().enumerate() {
        s.line(format!("C{i} = {}", c.render(alg)));
    }
    for (i, j) in dot::covers(cons.len(), |i, j| cons[i].refines(&cons[j])) {
        s.line(format!("C{i} < C{j}"));
    }
    s.checks(
        cons.iter()
            .map(|c| {
                Check::from_witness(
                    format!("congruence:{}", c.render(alg)),
                    congruence::congruence_violation(alg, c),
                )
            })
            .filter(|c| !c.is_ok()),
    );
    report.push(s);
    if !admits(alg, Class::LukNrs) {
        let mut s = Section::new("permutability");
        s.line("skipped: not a Łukasiewicz near semiring");
        report.push(s);
        return Ok(());
    }
    let m = congruence::malcev_and_regularity_report(alg, limits)?;
    let mut s = Section::new("permutability");
    s.checks(m.checks);
    report.push(s);

    let mut s = Section::new("principal congruences");
    let mut closure = None;
    let mut raw = None;
    for a in alg.elements() {
        for b in a + 1..alg.size() {
            let w = werner_comparison(alg, a, b);
            s.line(format!(
                "theta({}, {}) = {}",
                alg.label(a),
                alg.label(b),
                w.congruence.render(alg)
            ));
            if !w.closure_matches && closure.is_none() {
                closure = Some(format!("a={} b={}", alg.label(a), alg.label(b)));
            }
            if let (Some((x, y)), None) = (w.raw_difference, &raw) {
                raw = Some(format!(
                    "a={} b={} pair ({}, {})",
                    alg.label(a),
                    alg.label(b),
                    alg.label(x),
                    alg.label(y)
                ));
            }
        }
    }
    s.check(Check::from_witness("werner:closure", closure));
    s.check(Check::comparison("werner:polynomial-pairs", raw));
    report.push(s);
    Ok(())
}

fn ideals_sections(report: &mut Report, alg: &FiniteAlgebra, lat: &IdealLattice) {
    let mut s = Section::new("ideals");
    s.line(format!("count = {}", lat.len()));
    for (i, id) in lat.ideals.iter().enumerate() {
        s.line(format!("I{i} = {}", id.render(alg)));
    }
    if lat.oracle_partial {
        s.line("subset scan skipped above threshold; ideals are congruence kernels");
    }
    report.push(s);
    let mut s = Section::new("lattice");
    for (i, j) in dot::covers(lat.len(), |i, j| lat.leq[i][j]) {
        s.line(format!("I{i} < I{j}"));
    }
    for (i, &p) in lat.pseudocomplement.iter().enumerate() {
        s.line(format!("I{i}* = I{p}"));
    }
    report.push(s);
    let mut s = Section::new("checks");
    s.checks(ideal::lattice_checks(alg, lat, FAMILY_CAP));
    report.push(s);
}

fn center_report(
    report: &mut Report,
    alg: &FiniteAlgebra,
    method: Method,
    limits: &Limits,
) -> Result<()> {
    let c = center::center(alg, limits)?;
    let mut s = Section::new("center");
    let items: Vec<String> = c.central.iter().map(|&e| alg.label(e)).collect();
    s.line(format!("Ce = [{}]", items.join(", ")));
    if method != Method::Both {
        for e in alg.elements() {
            let v = center::is_central(alg, e, method);
            s.line(match v.witness {
                None => format!("{}: central", alg.label(e)),
                Some(w) => format!("{}: not central {w}", alg.label(e)),
            });
        }
    }
    for (&e, (t0, t1)) in c.central.iter().zip(&c.factor_pairs) {
        s.line(format!(
            "{}: theta(e,0) = {} theta(e,1) = {}",
            alg.label(e),
            t0.render(alg),
            t1.render(alg)
        ));
    }
    s.checks(c.checks.iter().cloned());
    report.push(s);
    let mut s = Section::new("central laws");
    s.checks(center::central_laws_report(alg, &c.central, limits));
    report.push(s);
    let mut s = Section::new("decompositions");
    for &e in &c.central {
        let d = center::decompose(alg, e, limits);
        s.check(Check::from_witness(
            format!("decompose:{}", alg.label(e)),
            d.err().map(|err| err.to_string()),
        ));
    }
    report.push(s);
    if admits(alg, Class::LukNrs) {
        let lat = ideal::all_ideals(alg, limits)?;
        let mut s = Section::new("central ideals");
        for &e in &c.central {
            s.checks(center::central_ideal_checks(alg, &lat, e));
        }
        s.checks(center::skeleton_checks(alg, &lat, &c.central));
        report.push(s);
    }
    Ok(())
}

fn cb_sections(
    report: &mut Report,
    inst: &CbInstance,
    trace: &CbTrace,
    iso: std::result::Result<&Homomorphism, String>,
) {
    let (a_alg, b_alg) = (&inst.a_alg, &inst.b_alg);
    let mut s = Section::new("instance");
    s.line(format!(
        "a = {} b = {}",
        a_alg.label(inst.a),
        b_alg.label(inst.b)
    ));
    let show = |alg: &FiniteAlgebra, m: &[Element]| {
        m.iter()
            .map(|&x| alg.label(x))
            .collect::<Vec<_>>()
            .join(", ")
    };
    s.line(format!("gamma = [{}]", show(b_alg, &inst.gamma_global())));
    s.line(format!("beta = [{}]", show(a_alg, &inst.beta_global())));
    report.push(s);
    let mut s = Section::new("chains");
    s.line("n v_n u_n e_n d_n");
    for k in 0..trace.v.len() {
        s.line(format!(
            "{k} {} {} {} {}",
            a_alg.label(trace.v[k]),
            b_alg.label(trace.u[k]),
            trace.e.get(k).map_or("-".into(), |&x| a_alg.label(x)),
            trace.d.get(k).map_or("-".into(), |&x| b_alg.label(x)),
        ));
    }
    s.line(format!(
        "stabilization = {} v_inf = {} u_inf = {}",
        trace.stabilization(),
        a_alg.label(trace.v_inf),
        b_alg.label(trace.u_inf)
    ));
    s.checks(trace.checks.iter().cloned());
    report.push(s);
    let mut s = Section::new("isomorphism");
    match iso {
        Ok(h) => {
            s.lines.extend(map_lines(h));
            s.check(Check::pass("cb:isomorphism"));
        }
        Err(e) => {
            s.check(Check::fail("cb:isomorphism", e));
        }
    }
    report.push(s);
}

fn enumerate_report(
    mut report: Report,
    size: usize,
    class: Class,
    out: Option<&Path>,
    max_results: Option<usize>,
    resume: Option<ResumeToken>,
) -> Result<(String, i32)> {
    if max_results == Some(0) {
        return Err(Error::Usage("--max-results must be positive".into()));
    }
    let task = EnumerationTask {
        size,
        class,
        max_results,
        resume,
    };
    let result = search::enumerate(&task)?;
    let mut s = Section::new("enumeration");
    s.line(format!("oracle = {}", search::ORACLE_VERSION));
    s.line(format!("size = {size} class = {class}"));
    s.line(format!("jobs = {}", result.jobs_total));
    s.line(format!("models = {}", result.algebras.len()));
    for (form, _) in &result.algebras {
        s.line(form.hash_hex());
    }
    if let Some(dir) = out {
        fs::create_dir_all(dir)
            .map_err(|e| Error::Io(format!("cannot create `{}`: {e}", dir.display())))?;
        for (form, alg) in &result.algebras {
            write(
                &dir.join(format!("{}.alg", form.hash_hex())),
                &format::serialize_algebra(class, alg),
            )?;
        }
        s.line(format!(
            "wrote {} files to {}",
            result.algebras.len(),
            dir.display()
        ));
    }
    s.check(Check::pass("enumerate:axioms"));
    if let Some(token) = result.resume {
        report.push(s);
        let err = Error::Capped {
            found: result.algebras.len(),
            resume: format!("--resume {token}"),
        };
        return Ok((format!("{}error: {err}\n", report.render()), 2));
    }
    if resume.is_none() {
        if let Some(frozen) = search::frozen_count(size, class) {
            let n = result.algebras.len();
            s.check(Check::from_witness(
                "enumerate:frozen-count",
                (n != frozen).then(|| format!("found {n}, frozen {frozen}")),
            ));
        }
    }
    report.push(s);
    Ok(finish(report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_two() {
        let (out, code) = run(["nearsemi", "check"]);
        assert_eq!(code, 2);
        assert!(out.contains("FILE"));
        let (out, code) = run(["nearsemi", "check", "/nonexistent/x.alg"]);
        assert_eq!(code, 2);
        assert!(out.starts_with("error: i/o error: cannot read `/nonexistent/x.alg`"));
    }

    #[test]
    fn help_exits_zero() {
        let (out, code) = run(["nearsemi", "--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("enumerate"));
    }

    #[test]
    fn top_level_split() {
        assert_eq!(split_top_level("(1,0),(0,1)"), ["(1,0)", "(0,1)"]);
        assert_eq!(split_top_level("h, 1"), ["h", " 1"]);
    }

    #[test]
    fn enumerate_small() {
        let (out, code) = run(["nearsemi", "enumerate", "--size", "3", "--class", "inrs"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("models = 2\n"));
        assert!(out.contains("PASS enumerate:frozen-count\n"));
    }
}
