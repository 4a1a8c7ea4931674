use std::fmt;
use std::path::Path;

use hsfield::algebra::{Gf, PolyRing, RatFunc, RatFuncField, Ring};
use hsfield::formal_group::FormalGroupLaw;
use hsfield::hs::{absolute_constants_basis, canonical_group_derivation, constants_basis, dependence_over_constants, HSDerivation};
use hsfield::prolongation::{
    axiom_instance_check, cv_compatibility, nabla_ideal, AffineVariety, Asserted, CompatMode, JetRing, SearchSpace,
    DEFAULT_POINT_BUDGET,
};
use hsfield::text::{self, Record};
use hsfield::trunc::fmt_index;
use hsfield::{suite, Error};

use crate::args::{Cli, Command, FglCommand, Format, GeoArgs, GeoCommand, GroupArgs, HsCommand, Mode, SuiteCommand};

pub enum CliError {
    Lib(Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(Error::Budget(_)) => 3,
            CliError::Lib(Error::Parse { .. } | Error::Argument(_) | Error::Unsupported(_)) | CliError::Usage(_) => 2,
            CliError::Lib(_) => 1,
        }
    }
}

type Res<T> = std::result::Result<T, CliError>;

/// Lines for standard output and the verdict.
pub struct Report {
    format: Format,
    pub out: String,
    pub passed: bool,
}

impl Report {
    fn new(format: Format) -> Self {
        Report { format, out: String::new(), passed: true }
    }

    fn emit(&mut self, rec: Record, line: impl FnOnce() -> String) {
        let s = match self.format {
            Format::Records => rec.to_string(),
            Format::Table => line(),
        };
        self.out.push_str(&s);
        self.out.push('\n');
    }

    fn raw(&mut self, text: &str) {
        self.out.push_str(text);
    }
}

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn budget(cli: &Cli) -> Res<Option<u64>> {
    if let Some(b) = cli.budget {
        return Ok(Some(b));
    }
    match std::env::var("HF_BUDGET") {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| CliError::Usage(format!("HF_BUDGET is not a number: {v}"))),
        Err(_) => Ok(None),
    }
}

fn field_of(p: Option<u64>, n: u32, fallback: Option<&Gf>) -> Res<Gf> {
    match (p, fallback) {
        (Some(p), _) => Ok(Gf::new(p, n)?),
        (None, Some(f)) => Ok(f.clone()),
        (None, None) => Err(CliError::Usage("--p is required".into())),
    }
}

fn law(g: &GroupArgs, fallback: Option<(&Gf, usize)>) -> Res<FormalGroupLaw> {
    if let Some(path) = &g.law_file {
        return Ok(text::parse_group_law(&read(path)?)?);
    }
    let name = g.name.as_deref().ok_or_else(|| CliError::Usage("--name or --law-file is required".into()))?;
    let f = field_of(g.p, g.n, fallback.map(|x| x.0))?;
    let e = g.e.or(fallback.map(|x| x.1)).unwrap_or(1);
    Ok(FormalGroupLaw::builtin(name, &f, e)?)
}

fn law_label(l: &FormalGroupLaw) -> String {
    format!("{} (p={}, n={}, e={})", l.name(), l.field().p(), l.field().degree(), l.dim())
}

fn lift(d: &HSDerivation<PolyRing<Gf>>) -> Res<HSDerivation<RatFuncField>> {
    let k = RatFuncField::new(d.ring().clone());
    let target = d.target().over(k.clone());
    let images = d.images().iter().map(|im| d.target().map_coeffs(&target, im, |c| k.from_poly(c.clone()))).collect();
    Ok(HSDerivation::with_target(k, target, images)?)
}

pub fn run(cli: &Cli) -> Res<Report> {
    let mut rep = Report::new(cli.format);
    let budget = budget(cli)?;
    match &cli.command {
        Command::Fgl(FglCommand::Check { group, m }) => {
            let l = law(group, None)?;
            let v = l.check_axioms(*m)?;
            rep.passed = v.passed();
            let rec = Record::new("axioms")
                .field("law", l.name())
                .field("p", l.field().p())
                .field("n", l.field().degree())
                .field("e", l.dim())
                .field("m", m)
                .field("unit", v.unit_ok)
                .field("associativity", v.associativity_ok)
                .field("status", if v.passed() { "pass" } else { "fail" })
                .field("detail", v.describe());
            rep.emit(rec, || format!("{} at m={m}: {}", law_label(&l), v.describe()));
        }
        Command::Fgl(FglCommand::Constants { group, m }) => {
            let l = law(group, None)?;
            let c = l.truncate(*m)?.structure_constants()?;
            let idx = c.index_set().clone();
            for (i, j, k, x) in c.nonzero() {
                let rec = Record::new("c")
                    .field("i", fmt_index(idx.get(i)))
                    .field("j", fmt_index(idx.get(j)))
                    .field("k", fmt_index(idx.get(k)))
                    .field("value", c.field().fmt_fe(x));
                rep.emit(rec, || c.fmt_entry(i, j, k, x));
            }
        }
        Command::Hs(HsCommand::CheckIter { derivation, group }) => {
            let d = text::parse_derivation(&read(derivation)?)?;
            let l = law(group, Some((d.ring().base(), d.dim())))?;
            let g = l.truncate(d.level())?;
            let diagram = d.check_iterativity(&g)?;
            let tensor = d.check_iterativity_constants(&g.structure_constants()?)?;
            if diagram != tensor {
                return Err(CliError::Lib(Error::Inconsistent("the two iterativity checks disagree".into())));
            }
            rep.passed = diagram.passed();
            let rec = Record::new("iterativity")
                .field("law", l.name())
                .field("m", d.level())
                .field("status", if diagram.passed() { "pass" } else { "fail" })
                .field("detail", diagram.describe());
            rep.emit(rec, || format!("iterativity for {} at m={}: {}", law_label(&l), d.level(), diagram.describe()));
        }
        Command::Hs(HsCommand::Canonical { group, m }) => {
            let l = law(group, None)?;
            let d = canonical_group_derivation(&l, *m)?;
            match cli.format {
                Format::Table => rep.raw(&text::fmt_derivation(&d)),
                Format::Records => {
                    for (name, im) in d.ring().names().iter().zip(d.images()) {
                        let rec = Record::new("image").field("gen", name).field("series", d.target().fmt_elem(im));
                        rep.emit(rec, String::new);
                    }
                }
            }
        }
        Command::Hs(HsCommand::Constants { derivation, degree, absolute }) => {
            let d = text::parse_derivation(&read(derivation)?)?;
            let r = if *absolute { absolute_constants_basis(&d, *degree)? } else { constants_basis(&d, *degree)? };
            let rec = Record::new("constants").field("degree", degree).field("dim", r.dim()).field("strict", r.strict);
            rep.emit(rec, || format!("constants up to degree {degree}: dim = {}, strict = {}", r.dim(), r.strict));
            for (i, b) in r.fmt_basis(d.ring()).into_iter().enumerate() {
                let rec = Record::new("basis").field("index", i).field("value", &b);
                rep.emit(rec, || format!("  {b}"));
            }
        }
        Command::Hs(HsCommand::Wronskian { derivation, group, elements }) => {
            let d = lift(&text::parse_derivation(&read(derivation)?)?)?;
            let k = d.ring().clone();
            let l = law(group, Some((k.base_field(), d.dim())))?;
            let g = l.truncate(d.level())?;
            let xs: Vec<RatFunc> = elements.iter().map(|s| text::parse_ratfunc(&k, s)).collect::<hsfield::Result<_>>()?;
            let dep = dependence_over_constants(&d, &g, &xs)?;
            let rec = Record::new("wronskian").field("elements", xs.len()).field("dependent", dep);
            rep.emit(rec, || format!("{} elements: {}", xs.len(), if dep { "dependent over the constants" } else { "independent over the constants" }));
        }
        Command::Geo(cmd) => geo(cmd, budget, &mut rep)?,
        Command::Suite(SuiteCommand::Acceptance { seed, only }) => {
            let outcomes = match only {
                Some(id) if (1..=suite::CRITERIA.len() as u32).contains(id) => vec![suite::run(*id, *seed)],
                Some(id) => return Err(CliError::Usage(format!("no criterion {id}"))),
                None => suite::run_all(*seed),
            };
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            rep.passed = failed == 0;
            rep.raw(&suite::render(&outcomes));
            rep.raw(&format!("{}\n", Record::new("summary").field("seed", seed).field("passed", outcomes.len() - failed).field("failed", failed)));
        }
    }
    Ok(rep)
}

struct GeoContext {
    jet: JetRing,
    v: AffineVariety,
}

fn geo_context(a: &GeoArgs) -> Res<GeoContext> {
    let d = lift(&text::parse_derivation(&read(&a.derivation)?)?)?;
    let v = text::parse_variety(d.ring(), &read(&a.v)?)?;
    let jet = JetRing::new(&d, v.ring.clone())?;
    Ok(GeoContext { jet, v })
}

fn variety_in(ctx: &GeoContext, path: &Path) -> Res<AffineVariety> {
    let w = text::parse_variety(ctx.jet.field(), &read(path)?)?;
    if w.ring != *ctx.jet.jets() {
        return Err(CliError::Usage(format!(
            "{}: variables must be the jet variables {}",
            path.display(),
            ctx.jet.jets().names().join(" ")
        )));
    }
    Ok(w)
}

fn q_field(q: u64) -> Res<Gf> {
    let p = (2..=q).find(|p| q.is_multiple_of(*p)).ok_or_else(|| CliError::Usage(format!("bad field size {q}")))?;
    let mut n = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        n += 1;
    }
    if r != 1 {
        return Err(CliError::Usage(format!("{q} is not a prime power")));
    }
    Ok(Gf::new(p, n)?)
}

fn geo(cmd: &GeoCommand, budget: Option<u64>, rep: &mut Report) -> Res<()> {
    match cmd {
        GeoCommand::Nabla { geo } => {
            let ctx = geo_context(geo)?;
            let nv = nabla_ideal(&ctx.v, &ctx.jet)?;
            match rep.format {
                Format::Table => rep.raw(&text::fmt_variety(&nv)?),
                Format::Records => {
                    rep.emit(Record::new("vars").field("names", nv.ring.names().join(" ")), String::new);
                    for (i, g) in nv.fmt_gens().into_iter().enumerate() {
                        rep.emit(Record::new("generator").field("index", i).field("poly", g), String::new);
                    }
                }
            }
        }
        GeoCommand::CheckCompat { geo, w, group, mode, q } => {
            let ctx = geo_context(geo)?;
            let w = variety_in(&ctx, w)?;
            let d = ctx.jet.derivation();
            let l = law(group, Some((ctx.jet.field().base_field(), d.dim())))?;
            let g = l.truncate(d.level())?;
            let mode = match (mode, q) {
                (Mode::Pointwise, Some(q)) => CompatMode::Pointwise(q_field(*q)?),
                (Mode::Pointwise, None) => CompatMode::Pointwise(ctx.jet.field().base_field().clone()),
                (Mode::Symbolic, _) => CompatMode::Symbolic,
            };
            let r = cv_compatibility(&g, &ctx.jet, &ctx.v, &w, &mode, budget.unwrap_or(DEFAULT_POINT_BUDGET))?;
            rep.passed = r.compatible;
            let mode_name = match &mode {
                CompatMode::Pointwise(f) => format!("pointwise(q={})", f.order()),
                CompatMode::Symbolic => "symbolic".into(),
            };
            let mut rec = Record::new("compat").field("mode", &mode_name).field("compatible", r.compatible).field("points", r.points_checked);
            if let Some(wit) = &r.witness {
                rec = rec.field("witness", wit);
            }
            rep.emit(rec, || match &r.witness {
                None => format!("{mode_name}: compatible ({} points)", r.points_checked),
                Some(w) => format!("{mode_name}: incompatible at {w}"),
            });
        }
        GeoCommand::Search { geo, w, z, group, q, degree, assert_irreducible, assert_generic_projection } => {
            let ctx = geo_context(geo)?;
            let w = variety_in(&ctx, w)?;
            let z = z.as_ref().map(|p| variety_in(&ctx, p)).transpose()?;
            let d = ctx.jet.derivation();
            let k = ctx.jet.field().clone();
            let l = law(group, Some((k.base_field(), d.dim())))?;
            let g = l.truncate(d.level())?;
            let space = match (q, degree) {
                (Some(q), _) => {
                    if *q != k.base_field().order() {
                        return Err(CliError::Usage(format!("--q {q} differs from the base field size {}", k.base_field().order())));
                    }
                    SearchSpace::BaseField
                }
                (None, Some(d)) => SearchSpace::DegreeBound(*d),
                (None, None) => return Err(CliError::Usage("--q or --degree is required".into())),
            };
            let asserted = Asserted { irreducible: *assert_irreducible, generic_projection: *assert_generic_projection };
            let r = axiom_instance_check(&g, &ctx.jet, &ctx.v, &w, z.as_ref(), space, asserted, budget.unwrap_or(DEFAULT_POINT_BUDGET))?;
            rep.passed = !r.exhausted();
            let show = |xs: &[RatFunc]| xs.iter().map(|x| k.fmt_elem(x)).collect::<Vec<_>>().join(", ");
            let space_name = match space {
                SearchSpace::BaseField => format!("F_{}", k.base_field().order()),
                SearchSpace::DegreeBound(d) => format!("degree<={d}"),
            };
            let mut rec = Record::new("search").field("space", &space_name).field("size", r.space_size).field("checked", r.checked);
            if let (Some(a), Some(b)) = (&r.witness, &r.jet) {
                rec = rec.field("witness", show(a)).field("jet", show(b));
            } else {
                rec = rec.field("exhausted", true);
            }
            rec = rec.field("irreducible_asserted", r.irreducible_asserted).field("generic_projection_asserted", r.generic_projection_asserted);
            rep.emit(rec, || match &r.witness {
                Some(a) => format!("witness ({}) with jet ({}) after {} of {} candidates", show(a), show(r.jet.as_deref().unwrap_or(&[])), r.checked, r.space_size),
                None => format!("exhausted {} candidates in {space_name}", r.space_size),
            });
            if rep.format == Format::Table {
                rep.raw(&format!(
                    "asserted: irreducible={} generic_projection={}\n",
                    r.irreducible_asserted, r.generic_projection_asserted
                ));
            }
        }
    }
    Ok(())
}
