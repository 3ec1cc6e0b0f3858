//! The `invsemi` command line tool.
//!
//! Decisions print `YES` or `NO` on the first line of stdout, followed by
//! witness lines. Exit status is 0 for a completed decision, 1 when the
//! tool refuses (size cap, or a variety without a fast solver and no
//! `--force-oracle`), and 2 for unusable input.

pub mod formats;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use invsemi::answer::{ConjAnswer, MemberAnswer};
use invsemi::automata::{intersect_nonempty, AutomataError};
use invsemi::ct::CtSolver;
use invsemi::group::{set_transporter, GroupError};
use invsemi::hardness::ncl::{gen_ncl_automata, gen_ncl_conj, gen_ncl_member};
use invsemi::hardness::ugap::{gen_ugap_conj, gen_ugap_member};
use invsemi::hardness::{gen_equation, gen_mgs};
use invsemi::meta::{mgs_decide, solve_equations, EquationSystem, MgsCount, Symbol, Variable};
use invsemi::oracle::{close, naive_green, naive_member, OracleError};
use invsemi::reduction::{dispatch_conjugate, dispatch_member, DispatchOptions, Route, SolveError, Solver};
use invsemi::slp::{slp_clifford, slp_group, slp_semilattice, SlpError};
use invsemi::{
    classify, classify_generated, preston_wagner, Caps, CayleyTable, Conjugator, CtSystem, Green, InverseSemigroup, PartialBijection,
    PbSystem, Slp, SymmetricInverseMonoid, VarietyTag,
};

use formats::{EqnFile, FormatError, GraphFile, NclFile, PbFile, WordSym};

/// Expanded words longer than this are shown only as programs.
const WORD_PRINT_LIMIT: usize = 64;

#[derive(Parser, Debug)]
#[command(name = "invsemi", version, about = "Membership and conjugacy in finite inverse semigroups")]
struct Cli {
    /// Accepted for harness compatibility; every algorithm is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Model {
    Pb,
    Ct,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum SolverArg {
    Auto,
    Oracle,
    Group,
    Clifford,
    Sis,
    CtGreedy,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum RelArg {
    R,
    L,
    H,
    J,
    D,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum SlpKind {
    Auto,
    Group,
    Semilattice,
    Clifford,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum GenKind {
    UgapConj,
    UgapMember,
    NclConj,
    NclMember,
    NclAutomata,
    Mgs,
    Equation,
}

#[derive(clap::Args, Debug)]
struct SolveArgs {
    file: PathBuf,
    #[arg(long, value_enum)]
    model: Option<Model>,
    #[arg(long, value_enum, default_value = "auto")]
    solver: SolverArg,
    /// Skip classification and assume this variety.
    #[arg(long)]
    assume: Option<String>,
    /// Allow the brute-force oracle outside the tractable varieties.
    #[arg(long)]
    force_oracle: bool,
    /// Print intermediate objects to stderr.
    #[arg(long)]
    explain: bool,
    #[arg(long, default_value_t = invsemi::oracle::DEFAULT_MAX_ELEMENTS)]
    max_elements: usize,
}

#[derive(Subcommand, Debug)]
enum AutomataCmd {
    /// Decide whether the automata accept a common word.
    Intersect { files: Vec<PathBuf> },
    /// Check the inverse-automaton conditions.
    Validate { file: PathBuf },
    /// Export complete DFAs with a failure state.
    ToDfa { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report the variety of the generated subsemigroup.
    Classify {
        file: PathBuf,
        #[arg(long, default_value_t = invsemi::oracle::DEFAULT_MAX_ELEMENTS)]
        max_elements: usize,
    },
    /// Decide `target ∈ <Σ>`.
    Member(SolveArgs),
    /// Decide `s ∼ t` relative to `<Σ>`.
    Conj(SolveArgs),
    /// Decide a relative Green relation between `s` and `t`.
    Green {
        file: PathBuf,
        #[arg(long, value_enum, ignore_case = true)]
        rel: RelArg,
        #[arg(long, value_enum)]
        model: Option<Model>,
    },
    /// Build a straight-line program for `target`.
    Slp {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        kind: SlpKind,
    },
    /// Find a group element mapping dom(s) onto dom(t).
    Transport { file: PathBuf },
    Automata {
        #[command(subcommand)]
        cmd: AutomataCmd,
    },
    /// Generate an instance by one of the hardness reductions.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        input: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Decide whether `<Σ>` has a generating set of size at most K.
    Mgs {
        file: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        inverse_closed: bool,
    },
    /// Solve an equation system.
    Eqn { file: PathBuf },
    /// Re-check the witnesses in a saved output against the instance.
    Verify { instance: PathBuf, output: PathBuf },
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Refused(String),
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::Refused(e.to_string())
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Algebra(a) => CliError::Input(a.to_string()),
            SolveError::Munn(m) => CliError::Input(format!("{m}; the subsemigroup is not strict inverse")),
            SolveError::Group(GroupError::NotAGroup) => CliError::Input("generators do not form a group".into()),
            other => CliError::Refused(other.to_string()),
        }
    }
}

type Res = Result<(), CliError>;

struct Io<'a> {
    out: String,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn line(&mut self, s: impl AsRef<str>) {
        self.out.push_str(s.as_ref());
        self.out.push('\n');
    }

    fn explain(&mut self, s: impl AsRef<str>) {
        let _ = writeln!(self.err, "{}", s.as_ref());
    }
}

/// Runs the tool on `argv` (including the program name) and returns the
/// exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if e.use_stderr() {
                let _ = write!(err, "{e}");
            } else {
                let _ = write!(out, "{e}");
            }
            return code;
        }
    };
    let mut io = Io { out: String::new(), err };
    let r = dispatch(cli.cmd, &mut io);
    let _ = out.write_all(io.out.as_bytes());
    match r {
        Ok(()) => 0,
        Err(CliError::Refused(m)) => {
            let _ = writeln!(io.err, "refused: {m}");
            1
        }
        Err(CliError::Input(m)) => {
            let _ = writeln!(io.err, "error: {m}");
            2
        }
    }
}

fn dispatch(cmd: Command, io: &mut Io) -> Res {
    match cmd {
        Command::Classify { file, max_elements } => cmd_classify(&file, Caps::elements(max_elements), io),
        Command::Member(a) => cmd_member(&a, io),
        Command::Conj(a) => cmd_conj(&a, io),
        Command::Green { file, rel, model } => cmd_green(&file, rel, model, io),
        Command::Slp { file, kind } => cmd_slp(&file, kind, io),
        Command::Transport { file } => cmd_transport(&file, io),
        Command::Automata { cmd } => cmd_automata(cmd, io),
        Command::Gen { kind, input, out } => cmd_gen(kind, &input, &out, io),
        Command::Mgs { file, k, inverse_closed } => cmd_mgs(&file, k, inverse_closed, io),
        Command::Eqn { file } => cmd_eqn(&file, io),
        Command::Verify { instance, output } => cmd_verify(&instance, &output, io),
    }
}

enum Instance {
    Pb(PbFile),
    Ct(formats::CtFile),
}

fn load(path: &Path) -> Result<Instance, CliError> {
    let text = formats::read(path)?;
    match formats::kind_of(&text) {
        Some("pb") => Ok(Instance::Pb(PbFile::parse(&text)?)),
        Some("ct") => Ok(Instance::Ct(formats::CtFile::parse(&text)?)),
        Some(k) => Err(CliError::Input(format!("expected a pb or ct file, found `{k}`"))),
        None => Err(CliError::Input("empty file".into())),
    }
}

fn pb_system(f: &PbFile) -> Result<PbSystem, CliError> {
    PbSystem::from_gens(f.degree, f.generators()).map_err(|e| CliError::Input(e.to_string()))
}

fn ct_gens(f: &formats::CtFile) -> Result<Vec<usize>, CliError> {
    f.gens.clone().ok_or_else(|| CliError::Input("ct file has no `gens` line".into()))
}

fn ct_system(f: &formats::CtFile) -> Result<CtSystem, CliError> {
    CtSystem::new(f.table.clone(), ct_gens(f)?).map_err(|e| CliError::Input(e.to_string()))
}

fn need<T: Clone>(x: &Option<T>, what: &str) -> Result<T, CliError> {
    x.clone().ok_or_else(|| CliError::Input(format!("instance has no `{what}` line")))
}

/// Converts a ct instance into the partial-bijection model.
fn ct_as_pb(f: &formats::CtFile) -> Result<PbFile, CliError> {
    let rho = preston_wagner(&f.table);
    let gens = ct_gens(f)?.into_iter().map(|i| (None, rho[i].clone())).collect();
    Ok(PbFile { degree: f.table.size(), gens, target: f.target.map(|i| rho[i].clone()), s: f.s.map(|i| rho[i].clone()), t: f.t.map(|i| rho[i].clone()) })
}

/// Display names for `Σ`, used when every declared generator is named.
fn gen_names(f: &PbFile, sys: &PbSystem) -> Option<Vec<String>> {
    let declared: Vec<String> = f.gens.iter().map(|(n, _)| n.clone()).collect::<Option<_>>()?;
    let mut names = declared.clone();
    for i in declared.len()..sys.len() {
        names.push(format!("{}~", declared[sys.inverse_index(i)]));
    }
    Some(names)
}

fn word_line(slp: &Slp, inverse_of: &[usize], names: Option<&[String]>) -> Option<String> {
    let w = slp.expand_word(inverse_of, WORD_PRINT_LIMIT)?;
    let toks: Vec<String> = w
        .iter()
        .map(|&i| match names {
            Some(n) => n[i].clone(),
            None => i.to_string(),
        })
        .collect();
    Some(format!("word {}", toks.join(" ")).trim_end().to_string())
}

fn print_slp(io: &mut Io, slp: &Slp) {
    io.line("slp");
    io.out.push_str(&slp.to_text());
}

fn print_member(io: &mut Io, ans: &MemberAnswer, inverse_of: &[usize], names: Option<&[String]>) {
    if !ans.member {
        io.line("NO");
        return;
    }
    io.line("YES");
    if let Some(w) = &ans.witness {
        if let Some(l) = word_line(w, inverse_of, names) {
            io.line(l);
        }
        print_slp(io, w);
    }
}

fn options(a: &SolveArgs) -> Result<DispatchOptions, CliError> {
    let solver = match a.solver {
        SolverArg::Auto => Solver::Auto,
        SolverArg::Oracle => Solver::Oracle,
        SolverArg::Group => Solver::Group,
        SolverArg::Clifford => Solver::Clifford,
        SolverArg::Sis => Solver::Sis,
        SolverArg::CtGreedy => unreachable!("handled by the caller"),
    };
    let assume = a.assume.as_deref().map(|s| s.parse::<VarietyTag>()).transpose().map_err(CliError::Input)?;
    Ok(DispatchOptions { solver, assume, allow_oracle: a.force_oracle, caps: Caps::elements(a.max_elements), explain: a.explain })
}

fn explain_report(io: &mut Io, route: Route, class: Option<&invsemi::Classification>, trace: &[String]) {
    if let Some(c) = class {
        io.explain(format!("variety: {}", c.tag));
    }
    io.explain(format!("route: {route:?}"));
    for t in trace {
        io.explain(t);
    }
}

/// The pb instance plus the table built from the closure of `Σ ∪ {extra}`,
/// for running the Cayley-table solvers on a pb file.
fn pb_as_ct(f: &PbFile, extra: &[&PartialBijection], caps: Caps) -> Result<(CtSystem, Vec<usize>), CliError> {
    let mut gens = f.generators();
    gens.extend(extra.iter().map(|x| (*x).clone()));
    let all = PbSystem::from_gens(f.degree, gens).map_err(|e| CliError::Input(e.to_string()))?;
    let closure = close(&all, caps)?;
    let table = CayleyTable::from_closure(&SymmetricInverseMonoid::new(f.degree), closure.elements()).map_err(|e| CliError::Input(e.to_string()))?;
    let idx = |x: &PartialBijection| closure.index_of(x).expect("in closure");
    let sys = CtSystem::new(table, f.generators().iter().map(idx).collect()).expect("valid indices");
    Ok((sys, extra.iter().map(|x| idx(x)).collect()))
}

fn model_of(inst: &Instance, model: Option<Model>) -> Model {
    model.unwrap_or(match inst {
        Instance::Pb(_) => Model::Pb,
        Instance::Ct(_) => Model::Ct,
    })
}

fn pb_view(inst: Instance) -> Result<PbFile, CliError> {
    match inst {
        Instance::Pb(f) => Ok(f),
        Instance::Ct(f) => ct_as_pb(&f),
    }
}

fn cmd_member(a: &SolveArgs, io: &mut Io) -> Res {
    let inst = load(&a.file)?;
    let caps = Caps::elements(a.max_elements);
    let model = model_of(&inst, a.model);
    if model == Model::Ct {
        let ct = match inst {
            Instance::Ct(f) => f,
            Instance::Pb(_) => return Err(CliError::Input("--model ct needs a ct file".into())),
        };
        let sys = ct_system(&ct)?;
        let t = need(&ct.target, "target")?;
        return ct_member(sys, t, a.solver, a.explain, caps, io);
    }
    let f = pb_view(inst)?;
    let sys = pb_system(&f)?;
    let t = need(&f.target, "target")?;
    if t.degree() != sys.degree() {
        return Err(CliError::Input("target degree differs from the generators".into()));
    }
    let names = gen_names(&f, &sys);
    if a.solver == SolverArg::CtGreedy {
        let (csys, idx) = pb_as_ct(&f, &[&t], caps)?;
        let mut solver = CtSolver::from_system(csys);
        let trace = solver.member_traced(idx[0]).map_err(|e| CliError::Input(e.to_string()))?;
        if a.explain {
            explain_greedy(io, &trace);
        }
        print_member(io, &trace.answer, sys.inverse_map(), names.as_deref());
        return Ok(());
    }
    let rep = dispatch_member(&sys, &t, &options(a)?)?;
    if a.explain {
        explain_report(io, rep.route, rep.classification.as_ref(), &rep.trace);
    }
    print_member(io, &rep.answer, sys.inverse_map(), names.as_deref());
    Ok(())
}

fn explain_greedy(io: &mut Io, trace: &invsemi::ct::GreedyTrace) {
    io.explain(format!("greedy loop: {} iterations", trace.steps.len()));
    for s in &trace.steps {
        io.explain(format!("x = {} : y = {}, u = Σ[{}] -> x = {}", s.from, s.y, s.gen, s.to));
    }
    io.explain(format!("final x = {}", trace.last));
}

fn ct_member(sys: CtSystem, t: usize, solver: SolverArg, explain: bool, caps: Caps, io: &mut Io) -> Res {
    let inverse_of = sys.inverse_map().to_vec();
    match solver {
        SolverArg::Auto | SolverArg::CtGreedy => {
            let mut s = CtSolver::from_system(sys);
            let trace = s.member_traced(t).map_err(|e| CliError::Input(e.to_string()))?;
            if explain {
                explain_greedy(io, &trace);
            }
            print_member(io, &trace.answer, &inverse_of, None);
        }
        SolverArg::Oracle => {
            let ans = match naive_member(&sys, &t, caps)? {
                Some(w) => MemberAnswer::yes(Slp::from_word(&w)),
                None => MemberAnswer::no(),
            };
            print_member(io, &ans, &inverse_of, None);
        }
        other => return Err(CliError::Input(format!("solver {other:?} needs --model pb"))),
    }
    Ok(())
}

fn print_conj_pb(io: &mut Io, ans: &ConjAnswer<PartialBijection>) {
    if !ans.conjugate {
        io.line("NO");
        return;
    }
    io.line("YES");
    match &ans.conjugator {
        Some(Conjugator::Element(u)) => io.line(format!("conjugator {u}")),
        _ => io.line("conjugator identity"),
    }
    if let Some(w) = &ans.witness {
        print_slp(io, w);
    }
}

fn print_conj_ct(io: &mut Io, ans: &ConjAnswer<usize>) {
    if !ans.conjugate {
        io.line("NO");
        return;
    }
    io.line("YES");
    match &ans.conjugator {
        Some(Conjugator::Element(u)) => io.line(format!("conjugator {u}")),
        _ => io.line("conjugator identity"),
    }
    if let Some(w) = &ans.witness {
        print_slp(io, w);
    }
}

fn cmd_conj(a: &SolveArgs, io: &mut Io) -> Res {
    let inst = load(&a.file)?;
    let caps = Caps::elements(a.max_elements);
    if model_of(&inst, a.model) == Model::Ct {
        let ct = match inst {
            Instance::Ct(f) => f,
            Instance::Pb(_) => return Err(CliError::Input("--model ct needs a ct file".into())),
        };
        let sys = ct_system(&ct)?;
        let (s, t) = (need(&ct.s, "s")?, need(&ct.t, "t")?);
        let ans = match a.solver {
            SolverArg::Auto | SolverArg::CtGreedy => CtSolver::from_system(sys).conjugate(s, t).map_err(|e| CliError::Input(e.to_string()))?,
            SolverArg::Oracle => oracle_conj(&sys, &s, &t, caps)?,
            other => return Err(CliError::Input(format!("solver {other:?} needs --model pb"))),
        };
        print_conj_ct(io, &ans);
        return Ok(());
    }
    let f = pb_view(inst)?;
    let sys = pb_system(&f)?;
    let (s, t) = (need(&f.s, "s")?, need(&f.t, "t")?);
    if s.degree() != sys.degree() || t.degree() != sys.degree() {
        return Err(CliError::Input("s or t degree differs from the generators".into()));
    }
    if a.solver == SolverArg::CtGreedy {
        let (csys, idx) = pb_as_ct(&f, &[&s, &t], caps)?;
        let table = csys.ambient().clone();
        let ans = CtSolver::from_system(csys).conjugate(idx[0], idx[1]).map_err(|e| CliError::Input(e.to_string()))?;
        let elems = close(&PbSystem::from_gens(f.degree, [f.generators(), vec![s.clone(), t.clone()]].concat()).expect("valid"), caps)?;
        let _ = table;
        let conv = ConjAnswer {
            conjugate: ans.conjugate,
            conjugator: ans.conjugator.map(|c| match c {
                Conjugator::Identity => Conjugator::Identity,
                Conjugator::Element(i) => Conjugator::Element(elems.elements()[i].clone()),
            }),
            witness: ans.witness,
        };
        print_conj_pb(io, &conv);
        return Ok(());
    }
    let rep = dispatch_conjugate(&sys, &s, &t, &options(a)?)?;
    if a.explain {
        explain_report(io, rep.route, rep.classification.as_ref(), &rep.trace);
    }
    print_conj_pb(io, &rep.answer);
    Ok(())
}

fn oracle_conj<A: InverseSemigroup>(sys: &invsemi::GeneratorSystem<A>, s: &A::Element, t: &A::Element, caps: Caps) -> Result<ConjAnswer<A::Element>, CliError> {
    let c = close(sys, caps)?;
    Ok(match c.conjugator(sys.ambient(), s, t) {
        None => ConjAnswer::no(),
        Some((Conjugator::Identity, _)) => ConjAnswer::identity(),
        Some((u, k)) => {
            let k = k.expect("element conjugator");
            ConjAnswer { conjugate: true, conjugator: Some(u), witness: Some(Slp::from_word(&c.word(k))) }
        }
    })
}

fn cmd_classify(file: &Path, caps: Caps, io: &mut Io) -> Res {
    let c = match load(file)? {
        Instance::Pb(f) => classify_generated(&pb_system(&f)?, caps)?,
        Instance::Ct(f) => match &f.gens {
            Some(_) => classify_generated(&ct_system(&f)?, caps)?,
            None => {
                let all: Vec<usize> = (0..f.table.size()).collect();
                classify(&f.table, &all)
            }
        },
    };
    io.line(c.tag.to_string());
    io.line(format!("divides_Y2 = {}", c.divides_y2));
    io.line(format!("divides_B2 = {}", c.divides_b2));
    io.line(format!("divides_B21 = {}", c.divides_b21));
    Ok(())
}

fn cmd_green(file: &Path, rel: RelArg, model: Option<Model>, io: &mut Io) -> Res {
    let inst = load(file)?;
    let g = match rel {
        RelArg::R => Green::R,
        RelArg::L => Green::L,
        RelArg::H => Green::H,
        RelArg::J => Green::J,
        RelArg::D => Green::D,
    };
    let yes = if model_of(&inst, model) == Model::Ct {
        let Instance::Ct(f) = inst else { return Err(CliError::Input("--model ct needs a ct file".into())) };
        let (s, t) = (need(&f.s, "s")?, need(&f.t, "t")?);
        let sys = ct_system(&f)?;
        let mut solver = CtSolver::from_system(sys.clone());
        let e = |x: invsemi::AlgebraError| CliError::Input(x.to_string());
        match g {
            Green::R => solver.r_equiv(s, t).map_err(e)?,
            Green::L => solver.l_equiv(s, t).map_err(e)?,
            Green::H => solver.r_equiv(s, t).map_err(e)? && solver.l_equiv(s, t).map_err(e)?,
            Green::J | Green::D => naive_green(&sys, g, &s, &t, Caps::default())?,
        }
    } else {
        let f = pb_view(inst)?;
        let (s, t) = (need(&f.s, "s")?, need(&f.t, "t")?);
        naive_green(&pb_system(&f)?, g, &s, &t, Caps::default())?
    };
    io.line(if yes { "YES" } else { "NO" });
    Ok(())
}

fn cmd_slp(file: &Path, kind: SlpKind, io: &mut Io) -> Res {
    let f = pb_view(load(file)?)?;
    let sys = pb_system(&f)?;
    let t = need(&f.target, "target")?;
    let kind = match kind {
        SlpKind::Auto => match classify_generated(&sys, Caps::default())?.tag {
            VarietyTag::Trivial | VarietyTag::Group => SlpKind::Group,
            VarietyTag::Semilattice => SlpKind::Semilattice,
            VarietyTag::Clifford => SlpKind::Clifford,
            _ => SlpKind::Auto,
        },
        k => k,
    };
    let res = match kind {
        SlpKind::Group => slp_group(&sys, &t).map(|g| {
            io.explain(format!("method {:?}, |G| = {}, bound {}", g.method, g.group_order, g.bound()));
            g.slp
        }),
        SlpKind::Semilattice => slp_semilattice(&sys, &t),
        SlpKind::Clifford => slp_clifford(&sys, &t),
        SlpKind::Auto => {
            let opts = DispatchOptions { allow_oracle: false, ..DispatchOptions::default() };
            let rep = dispatch_member(&sys, &t, &opts)?;
            rep.answer.witness.ok_or(SlpError::NotInSubsemigroup)
        }
    };
    match res {
        Ok(p) => {
            io.line("YES");
            io.line(format!("length {}", p.len()));
            print_slp(io, &p);
        }
        Err(SlpError::NotInSubsemigroup) => io.line("NO"),
        Err(SlpError::Oracle(e)) => return Err(e.into()),
        Err(e) => return Err(CliError::Input(e.to_string())),
    }
    Ok(())
}

fn cmd_transport(file: &Path, io: &mut Io) -> Res {
    let f = pb_view(load(file)?)?;
    let sys = pb_system(&f)?;
    let (s, t) = (need(&f.s, "s")?, need(&f.t, "t")?);
    match set_transporter(&sys, &s.domain(), &t.domain()) {
        Ok(Some((g, w))) => {
            io.line("YES");
            io.line(format!("witness {g}"));
            print_slp(io, &w);
        }
        Ok(None) => io.line("NO"),
        Err(GroupError::NotAGroup) => return Err(CliError::Input("generators do not form a group".into())),
        Err(e) => return Err(CliError::Refused(e.to_string())),
    }
    Ok(())
}

fn load_automata(files: &[PathBuf]) -> Result<Vec<invsemi::automata::InverseAutomaton>, CliError> {
    let mut all = Vec::new();
    for f in files {
        all.extend(formats::parse_ia(&formats::read(f)?)?);
    }
    if all.is_empty() {
        return Err(CliError::Input("no automata given".into()));
    }
    Ok(all)
}

fn cmd_automata(cmd: AutomataCmd, io: &mut Io) -> Res {
    match cmd {
        AutomataCmd::Intersect { files } => {
            let auts = load_automata(&files)?;
            match intersect_nonempty(&auts) {
                Ok(Some(w)) => {
                    io.line("YES");
                    let toks: Vec<String> = w.iter().map(|a| (a + 1).to_string()).collect();
                    io.line(format!("word {}", toks.join(" ")).trim_end());
                }
                Ok(None) => io.line("NO"),
                Err(AutomataError::StateCap { limit }) => return Err(CliError::Refused(format!("product search exceeded {limit} states"))),
                Err(e) => return Err(CliError::Input(e.to_string())),
            }
        }
        AutomataCmd::Validate { file } => {
            let auts = load_automata(&[file])?;
            io.line(format!("ok {}", auts.len()));
        }
        AutomataCmd::ToDfa { file } => {
            for a in load_automata(&[file])? {
                let rows = a.to_dfa();
                io.line(format!("dfa states={} alphabet={} fail={}", rows.len(), a.letters(), rows.len()));
                for (q, row) in rows.iter().enumerate() {
                    let r: Vec<String> = row.iter().map(|x| (x + 1).to_string()).collect();
                    io.line(format!("row {} {}", q + 1, r.join(" ")));
                }
                io.line(format!("start {}", a.start() + 1));
                let acc: Vec<String> = a.accepting().iter().map(|q| (q + 1).to_string()).collect();
                io.line(format!("accept {}", acc.join(" ")));
            }
        }
    }
    Ok(())
}

fn write_file(path: &Path, text: &str) -> Res {
    if let Some(d) = path.parent() {
        if !d.as_os_str().is_empty() {
            std::fs::create_dir_all(d).map_err(|e| CliError::Input(format!("{}: {e}", d.display())))?;
        }
    }
    std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn provenance(kind: &str, input: &Path) -> String {
    let name = input.file_name().map_or_else(|| input.display().to_string(), |n| n.to_string_lossy().into_owned());
    format!("% generated by invsemi gen {kind} from {name}\n")
}

fn cmd_gen(kind: GenKind, input: &Path, out: &Path, io: &mut Io) -> Res {
    let text = formats::read(input)?;
    let name = kind.to_possible_value().expect("named").get_name().to_string();
    let head = provenance(&name, input);
    match kind {
        GenKind::UgapConj | GenKind::UgapMember => {
            let g = GraphFile::parse(&text)?;
            let (s, t) = (need(&g.s, "s")?, need(&g.t, "t")?);
            let f = if kind == GenKind::UgapConj {
                let inst = gen_ugap_conj(&g.graph, s, t).map_err(|e| CliError::Input(e.to_string()))?;
                formats::CtFile { table: inst.system.ambient().clone(), gens: Some(inst.system.gens().to_vec()), target: None, s: Some(inst.s), t: Some(inst.t) }
            } else {
                let inst = gen_ugap_member(&g.graph, s, t).map_err(|e| CliError::Input(e.to_string()))?;
                formats::CtFile { table: inst.system.ambient().clone(), gens: Some(inst.system.gens().to_vec()), target: Some(inst.target), s: None, t: None }
            };
            write_file(out, &(head + &f.serialize()))?;
            io.line(format!("wrote {}", out.display()));
        }
        GenKind::NclConj | GenKind::NclMember => {
            let n = NclFile::parse(&text)?;
            let e = |x: invsemi::hardness::ncl::NclError| CliError::Input(x.to_string());
            let f = if kind == GenKind::NclConj {
                let inst = gen_ncl_conj(&n.machine, &n.cs, &n.ct).map_err(e)?;
                PbFile { degree: inst.encoding.degree, gens: inst.system.gens().iter().map(|g| (None, g.clone())).collect(), target: None, s: Some(inst.s), t: Some(inst.t) }
            } else {
                let inst = gen_ncl_member(&n.machine, &n.cs, &n.ct).map_err(e)?;
                PbFile { degree: inst.system.degree(), gens: inst.system.gens()[..inst.system.declared()].iter().map(|g| (None, g.clone())).collect(), target: Some(inst.target), s: None, t: None }
            };
            write_file(out, &(head + &f.serialize()))?;
            io.line(format!("wrote {}", out.display()));
        }
        GenKind::NclAutomata => {
            let n = NclFile::parse(&text)?;
            let (enc, auts) = gen_ncl_automata(&n.machine, &n.cs, &n.ct).map_err(|e| CliError::Input(e.to_string()))?;
            std::fs::create_dir_all(out).map_err(|e| CliError::Input(format!("{}: {e}", out.display())))?;
            let mut k = 0;
            for v in 0..n.machine.vertices() {
                for c in 0..enc.locals[v].len() {
                    let p = out.join(format!("v{}_c{}.ia", v + 1, c + 1));
                    write_file(&p, &(head.clone() + &formats::serialize_ia(&auts[k])))?;
                    k += 1;
                }
            }
            io.line(format!("wrote {k} automata to {}", out.display()));
        }
        GenKind::Mgs => {
            let f = PbFile::parse(&text)?;
            let sys = pb_system(&f)?;
            let t = need(&f.target, "target")?;
            let (big, k) = gen_mgs(&sys, &t).map_err(|e| CliError::Input(e.to_string()))?;
            let pf = PbFile { degree: big.degree(), gens: big.gens()[..big.declared()].iter().map(|g| (None, g.clone())).collect(), target: None, s: None, t: None };
            write_file(out, &(head + &format!("% k = {k}\n") + &pf.serialize()))?;
            io.line(format!("wrote {}", out.display()));
            io.line(format!("k {k}"));
        }
        GenKind::Equation => {
            let f = PbFile::parse(&text)?;
            let sys = pb_system(&f)?;
            let (s, t) = (need(&f.s, "s")?, need(&f.t, "t")?);
            let eq = gen_equation(&sys, &s, &t).map_err(|e| CliError::Input(e.to_string()))?;
            let stem = out.file_stem().map_or_else(|| "equation".to_string(), |s| s.to_string_lossy().into_owned());
            let ambient_name = format!("{stem}.ambient.pb");
            let constraint_name = format!("{stem}.constraint.pb");
            let dir = out.parent().unwrap_or_else(|| Path::new(""));
            let amb = PbFile { degree: f.degree, gens: f.gens.clone(), target: None, s: None, t: None };
            write_file(&dir.join(&ambient_name), &(head.clone() + &amb.serialize()))?;
            let cons = eq.variables[0].constraint.as_ref().expect("constrained");
            let cf = PbFile { degree: f.degree, gens: cons.gens()[..cons.declared()].iter().map(|g| (None, g.clone())).collect(), target: None, s: None, t: None };
            write_file(&dir.join(&constraint_name), &(head.clone() + &cf.serialize()))?;
            let ef = EqnFile {
                over: ambient_name,
                vars: vec![("X".into(), Some(constraint_name))],
                consts: vec![("S".into(), s), ("T".into(), t)],
                equations: vec![(vec![WordSym::Bar("X".into()), WordSym::Name("S".into()), WordSym::Name("X".into())], vec![WordSym::Name("T".into())])],
            };
            write_file(out, &(head + &ef.serialize()))?;
            io.line(format!("wrote {}", out.display()));
        }
    }
    Ok(())
}

fn cmd_mgs(file: &Path, k: usize, inverse_closed: bool, io: &mut Io) -> Res {
    let f = pb_view(load(file)?)?;
    let sys = pb_system(&f)?;
    let count = if inverse_closed { MgsCount::InverseClosed } else { MgsCount::Plain };
    let (yes, r) = mgs_decide(&sys, k, count, Caps::default())?;
    io.line(if yes { "YES" } else { "NO" });
    io.line(format!("minimum {}", r.minimum));
    if yes {
        for g in &r.witness {
            io.line(format!("gen {g}"));
        }
    }
    Ok(())
}

/// An equation file resolved into a system over `I(Ω)`.
struct LoadedEqn {
    ambient: PbSystem,
    system: EquationSystem<SymmetricInverseMonoid>,
    names: Vec<String>,
}

fn load_eqn(file: &Path) -> Result<LoadedEqn, CliError> {
    let ef = EqnFile::parse(&formats::read(file)?)?;
    let amb_file = PbFile::parse(&formats::read(&formats::relative_to(file, &ef.over))?)?;
    let ambient = pb_system(&amb_file)?;
    let n = ambient.degree();
    let mut variables = Vec::new();
    for (x, p) in &ef.vars {
        let constraint = match p {
            Some(p) => {
                let cf = PbFile::parse(&formats::read(&formats::relative_to(file, p))?)?;
                if cf.degree != n {
                    return Err(CliError::Input(format!("constraint for {x} has degree {}, ambient has {n}", cf.degree)));
                }
                Some(pb_system(&cf)?)
            }
            None => None,
        };
        variables.push(Variable { name: x.clone(), constraint });
    }
    for (c, v) in &ef.consts {
        if v.degree() != n {
            return Err(CliError::Input(format!("constant {c} has degree {}, ambient has {n}", v.degree())));
        }
    }
    let sym = |w: &WordSym| -> Symbol<PartialBijection> {
        match w {
            WordSym::Bar(x) => Symbol::VarInv(ef.vars.iter().position(|(v, _)| v == x).expect("checked")),
            WordSym::Name(x) => match ef.vars.iter().position(|(v, _)| v == x) {
                Some(i) => Symbol::Var(i),
                None => Symbol::Const(ef.consts.iter().find(|(c, _)| c == x).expect("checked").1.clone()),
            },
        }
    };
    let equations = ef.equations.iter().map(|(l, r)| (l.iter().map(sym).collect(), r.iter().map(sym).collect())).collect();
    Ok(LoadedEqn { ambient, system: EquationSystem { variables, equations }, names: ef.vars.iter().map(|(v, _)| v.clone()).collect() })
}

fn cmd_eqn(file: &Path, io: &mut Io) -> Res {
    let l = load_eqn(file)?;
    match solve_equations(&l.system, &l.ambient, Caps::default())? {
        Some(a) => {
            io.line("YES");
            for (x, v) in l.names.iter().zip(&a) {
                io.line(format!("assign {x} {v}"));
            }
        }
        None => io.line("NO"),
    }
    Ok(())
}

/// A saved output split into its records.
struct Output {
    yes: bool,
    records: Vec<(String, String)>,
    slp: Option<Slp>,
}

fn parse_output(text: &str) -> Result<Output, CliError> {
    let mut lines = text.lines();
    let yes = match lines.next().map(str::trim) {
        Some("YES") => true,
        Some("NO") => false,
        _ => return Err(CliError::Input("output does not start with YES or NO".into())),
    };
    let mut records = Vec::new();
    let mut slp = None;
    while let Some(l) = lines.next() {
        let l = l.trim();
        if l == "slp" {
            let mut body = String::new();
            for m in lines.by_ref() {
                body.push_str(m);
                body.push('\n');
                if m.trim_start().starts_with("target") {
                    break;
                }
            }
            slp = Some(Slp::parse(&body).map_err(|e| CliError::Input(format!("bad program: {e}")))?);
            continue;
        }
        let (k, r) = l.split_once(' ').unwrap_or((l, ""));
        records.push((k.to_string(), r.trim().to_string()));
    }
    Ok(Output { yes, records, slp })
}

fn record<'a>(o: &'a Output, key: &str) -> Option<&'a str> {
    o.records.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
}

fn cmd_verify(instance: &Path, output: &Path, io: &mut Io) -> Res {
    let o = parse_output(&formats::read(output)?)?;
    if !o.yes {
        io.line("VALID");
        io.line("negative answer carries no witness");
        return Ok(());
    }
    let text = formats::read(instance)?;
    let ok = match formats::kind_of(&text) {
        Some("ia") => {
            let auts = formats::parse_ia(&text)?;
            verify_automata(&auts, &o)?
        }
        Some("eqn") => verify_eqn(instance, &o)?,
        Some("pb") | Some("ct") => verify_algebra(load(instance)?, &o)?,
        other => return Err(CliError::Input(format!("cannot verify against a {other:?} file"))),
    };
    if ok {
        io.line("VALID");
        Ok(())
    } else {
        io.line("INVALID");
        Err(CliError::Refused("witness does not check out".into()))
    }
}

fn verify_automata(auts: &[invsemi::automata::InverseAutomaton], o: &Output) -> Result<bool, CliError> {
    let w = record(o, "word").ok_or_else(|| CliError::Input("no word to verify".into()))?;
    let word: Vec<usize> = w
        .split_whitespace()
        .map(|t| t.parse::<usize>().ok().filter(|&a| a > 0).map(|a| a - 1))
        .collect::<Option<_>>()
        .ok_or_else(|| CliError::Input("bad letter in word".into()))?;
    Ok(auts.iter().all(|a| a.accepts(&word)))
}

fn verify_eqn(instance: &Path, o: &Output) -> Result<bool, CliError> {
    let l = load_eqn(instance)?;
    let mut assign = Vec::new();
    for x in &l.names {
        let v = o
            .records
            .iter()
            .find(|(k, r)| k == "assign" && r.split_whitespace().next() == Some(x.as_str()))
            .ok_or_else(|| CliError::Input(format!("no assignment for {x}")))?;
        let imgs = v.1.split_once(' ').map_or("", |(_, r)| r);
        assign.push(imgs.parse::<PartialBijection>().map_err(|e| CliError::Input(e.to_string()))?);
    }
    if assign.iter().any(|a| a.degree() != l.ambient.degree()) {
        return Ok(false);
    }
    let amb = SymmetricInverseMonoid::new(l.ambient.degree());
    if !l.system.satisfied(&amb, &assign) {
        return Ok(false);
    }
    for (v, a) in l.system.variables.iter().zip(&assign) {
        let sys = v.constraint.as_ref().unwrap_or(&l.ambient);
        if naive_member(sys, a, Caps::default())?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn verify_algebra(inst: Instance, o: &Output) -> Result<bool, CliError> {
    if let Some(c) = record(o, "conjugator") {
        return match inst {
            Instance::Pb(f) => {
                let sys = pb_system(&f)?;
                let (s, t) = (need(&f.s, "s")?, need(&f.t, "t")?);
                let amb = SymmetricInverseMonoid::new(f.degree);
                if c == "identity" {
                    return Ok(s == t);
                }
                let u: PartialBijection = c.parse().map_err(|e: invsemi::AlgebraError| CliError::Input(e.to_string()))?;
                Ok(u.degree() == f.degree && amb.conjugates_by(&s, &t, &u) && slp_matches(&sys, o.slp.as_ref(), &u))
            }
            Instance::Ct(f) => {
                let sys = ct_system(&f)?;
                let (s, t) = (need(&f.s, "s")?, need(&f.t, "t")?);
                if c == "identity" {
                    return Ok(s == t);
                }
                let u: usize = c.parse().map_err(|_| CliError::Input("bad conjugator index".into()))?;
                Ok(u < f.table.size() && f.table.conjugates_by(&s, &t, &u) && slp_matches(&sys, o.slp.as_ref(), &u))
            }
        };
    }
    if let Some(m) = record(o, "minimum") {
        let f = pb_view(inst)?;
        let sys = pb_system(&f)?;
        let gens: Vec<PartialBijection> = o
            .records
            .iter()
            .filter(|(k, _)| k == "gen")
            .map(|(_, v)| v.parse::<PartialBijection>())
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::Input(e.to_string()))?;
        let m: usize = m.parse().map_err(|_| CliError::Input("bad minimum".into()))?;
        if gens.is_empty() || gens.iter().any(|g| g.degree() != f.degree) {
            return Ok(false);
        }
        let whole = close(&sys, Caps::default())?;
        let sub = close(&PbSystem::from_gens(f.degree, gens.clone()).expect("same degree"), Caps::default())?;
        let mut a = whole.elements().to_vec();
        let mut b = sub.elements().to_vec();
        a.sort();
        b.sort();
        // Under either count the listed set is no larger than its weight.
        return Ok(a == b && gens.len() <= m);
    }
    if let Some(w) = record(o, "witness") {
        let f = pb_view(inst)?;
        let sys = pb_system(&f)?;
        let (s, t) = (need(&f.s, "s")?, need(&f.t, "t")?);
        let g: PartialBijection = w.parse().map_err(|e: invsemi::AlgebraError| CliError::Input(e.to_string()))?;
        if g.degree() != f.degree {
            return Ok(false);
        }
        let mut img: Vec<usize> = s.domain().iter().filter_map(|&x| g.image(x)).collect();
        img.sort();
        return Ok(img.len() == s.rank() && img == t.domain() && slp_matches(&sys, o.slp.as_ref(), &g));
    }
    let Some(p) = &o.slp else {
        // Decisions such as Green relations carry no witness.
        return Ok(true);
    };
    match inst {
        Instance::Pb(f) => {
            let sys = pb_system(&f)?;
            let t = need(&f.target, "target")?;
            let word_ok = word_matches(&f, &sys, o, &t);
            Ok(slp_matches(&sys, Some(p), &t) && word_ok)
        }
        Instance::Ct(f) => {
            let sys = ct_system(&f)?;
            let t = need(&f.target, "target")?;
            Ok(slp_matches(&sys, Some(p), &t))
        }
    }
}

fn word_matches(f: &PbFile, sys: &PbSystem, o: &Output, t: &PartialBijection) -> bool {
    let Some(w) = record(o, "word") else { return true };
    let names = gen_names(f, sys);
    let idx: Option<Vec<usize>> = w
        .split_whitespace()
        .map(|tok| match &names {
            Some(n) => n.iter().position(|x| x == tok),
            None => tok.parse().ok(),
        })
        .collect();
    idx.and_then(|w| sys.eval_word(&w)).as_ref() == Some(t)
}

fn slp_matches<A: InverseSemigroup>(sys: &invsemi::GeneratorSystem<A>, p: Option<&Slp>, x: &A::Element) -> bool {
    match p {
        None => true,
        Some(p) => p.eval(sys).is_ok_and(|v| &v == x),
    }
}
