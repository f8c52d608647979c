use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use plfun::character::DirichletCharacter;
use plfun::cyclotomic::CyclotomicPadic;
use plfun::higher_rank::{
    gl32_measure, gl32_relation_sweep, gl4_distribution, pointwise_ratio, symcube_quotient, SlotConvention,
};
use plfun::iwasawa::weierstrass_invariants;
use plfun::lfun::{
    birch_twisted_value, euler_factor_mtt, hensel_root, interpolation_value, kubota_leopoldt_with, lp_sweep,
    zeta_bernoulli_value, EigenTable, HeckeRootChoice, PadicLFunction, PeriodValues,
};
use plfun::measure::certify_bounded;
use plfun::modsym::{EigenSymbol, ManinSymbolSpace};
use plfun::padic::{is_odd_prime, vp_rational};
use plfun::polygon::{
    gl4_ordinarity_report, hodge_polygon, newton_polygon, parse_q64, sym_power_hecke, sym_power_ordinarity_report,
    HodgeData, Polygon, Q64,
};
use plfun::serial::{
    eigen_table_to_json, family_to_json, measure_to_json, parse_family, parse_provider, CharDescriptor, ProviderFile,
};
use plfun::{Error, PadicNumber};

use crate::args::{Convention, ModformArgs, ModformCmd, PolygonCmd, ProviderCmd, SymcubeCmd, ZetaArgs};
use crate::config::RunConfig;
use crate::report::Report;

/// Failure before a command could produce a report.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Math(#[from] Error),
    #[error("{0}")]
    Io(String),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn prime(flag: Option<u64>, cfg: &RunConfig) -> CliResult<u64> {
    let p = flag.or(cfg.p).ok_or_else(|| CliError::Usage("a prime is required (-p)".into()))?;
    if !is_odd_prime(p) {
        return Err(CliError::Usage(format!("p must be an odd prime, got {p}")));
    }
    Ok(p)
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

fn polygon_text(p: &Polygon) -> String {
    let v: Vec<String> = p.vertices().iter().map(|(x, y)| format!("({x}, {y})")).collect();
    v.join(" ")
}

fn q64_json(v: &Q64) -> String {
    v.to_string()
}

fn polygon_json(p: &Polygon) -> Vec<(u64, String)> {
    p.vertices().iter().map(|(x, y)| (*x, q64_json(y))).collect()
}

pub fn cmd_zeta(cfg: &RunConfig, a: &ZetaArgs) -> CliResult<Report> {
    let p = prime(a.p, cfg)?;
    let c = a.reg_c.or(cfg.reg_c).unwrap_or(p + 1);
    let z = kubota_leopoldt_with(p, a.k, cfg.prec, c)?;
    let exact = zeta_bernoulli_value(p, a.k);
    let reference = PadicNumber::from_rational(p, &exact, z.value.abs_precision());
    let mut r = Report::new("zeta");
    r.show("p", &p)
        .show("k", &a.k)
        .show("regularizer", &z.c)
        .field("value", &z.value, z.value.to_string())
        .show("pole_branch", &z.pole_adjacent)
        .field("bernoulli_value", &exact.to_string(), exact.to_string())
        .check("bernoulli_check", (&reference - &z.value).is_zero());
    Ok(r)
}

#[derive(Serialize)]
struct LpRow {
    descriptor: String,
    j: u32,
    value: CyclotomicPadic,
    euler_factor: PadicNumber,
    exceptional: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    identity: Option<bool>,
}

/// Space, symbols, root and measure for one newform.
pub struct Pipeline {
    pub space: ManinSymbolSpace,
    pub plus: EigenSymbol,
    pub minus: Option<EigenSymbol>,
    pub root: HeckeRootChoice,
    pub l: PadicLFunction,
}

impl Pipeline {
    pub fn build(level: u64, k: u32, p: u64, levels: u32, prec: u32) -> CliResult<Self> {
        if level % p == 0 {
            return Err(CliError::Math(Error::Domain(format!("p = {p} divides the level {level}"))));
        }
        let space = ManinSymbolSpace::new(level, k)?;
        let mut plus = EigenSymbol::from_space(&space, 1, None)?;
        let ap = plus.add_eigenvalue(&space, p)?;
        let mut minus = EigenSymbol::from_space(&space, -1, None).ok();
        if let Some(m) = minus.as_mut() {
            m.add_eigenvalue(&space, p)?;
        }
        let root = match hensel_root(ap, 1, k, p, prec) {
            Err(Error::Supersingular) => {
                return Err(Error::NotOrdinary(format!("a_{p} = 0, p is supersingular")).into());
            }
            r => r?,
        };
        if !root.ordinary {
            return Err(Error::NotOrdinary(format!("a_{p} = {ap} is not a unit")).into());
        }
        let l = PadicLFunction::new(&plus, minus.as_ref().map(|m| m as &dyn PeriodValues), &root, levels, prec)?;
        Ok(Pipeline { space, plus, minus, root, l })
    }

    fn certificates(&self, r: &mut Report) {
        r.show("level", &self.plus.level())
            .show("weight", &self.plus.weight())
            .show("p", &self.root.p)
            .show("dim_cuspidal_plus", &self.space.cuspidal_sign_dimension(1))
            .show("dim_cuspidal_minus", &self.space.cuspidal_sign_dimension(-1))
            .show("a_p", &self.root.ap)
            .field("alpha", &self.root.alpha, self.root.alpha.to_string())
            .show("slope", &self.root.slope())
            .show("levels", &self.l.levels());
        let mut violations = 0;
        let mut bounded = true;
        for m in [Some(&self.l.plus), self.l.minus.as_ref()].into_iter().flatten() {
            violations += m.additivity_violations().len();
            for c in m.certificates() {
                bounded &= c.bounded && c.bound_exponent <= self.l.growth_bound();
            }
        }
        r.show("additivity_violations", &violations).check("additive", violations == 0).check("bounded", bounded);
    }

    fn symbol(&self, sign: i64) -> CliResult<&EigenSymbol> {
        if sign > 0 {
            Ok(&self.plus)
        } else {
            self.minus.as_ref().ok_or_else(|| Error::Domain("no symbol of sign - in this space".into()).into())
        }
    }
}

fn character(desc: &str, p: u64, prec: u32) -> CliResult<(CharDescriptor, DirichletCharacter)> {
    let d = CharDescriptor::parse(desc)?;
    let chi = d.to_character(p, prec)?;
    Ok((d, chi))
}

/// `all` or `random:<count>` select characters modulo `p^levels`; anything
/// else is a single descriptor.
fn characters(
    sel: &str,
    p: u64,
    levels: u32,
    prec: u32,
    seed: u64,
) -> CliResult<Vec<(CharDescriptor, DirichletCharacter)>> {
    let all = || -> CliResult<Vec<(CharDescriptor, DirichletCharacter)>> {
        let mut v = DirichletCharacter::all(p, levels, prec)?
            .into_iter()
            .map(|c| Ok((CharDescriptor::from_character(&c)?, c.primitive())))
            .collect::<CliResult<Vec<_>>>()?;
        v.sort_by_key(|(d, _)| (d.n, d.tame, d.wild));
        Ok(v)
    };
    if sel == "all" {
        return all();
    }
    if let Some(n) = sel.strip_prefix("random:") {
        let n: usize = n.parse().map_err(|_| CliError::Usage(format!("bad count in {sel:?}")))?;
        let mut v = all()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        v.shuffle(&mut rng);
        v.truncate(n);
        v.sort_by_key(|(d, _)| (d.n, d.tame, d.wild));
        return Ok(v);
    }
    Ok(vec![character(sel, p, prec)?])
}

pub fn cmd_modform(cfg: &RunConfig, a: &ModformArgs) -> CliResult<Report> {
    let p = prime(a.p, cfg)?;
    let level = a.level.or(cfg.level).ok_or_else(|| CliError::Usage("a level is required (-N)".into()))?;
    let k = a.k.unwrap_or(cfg.weight);
    let base = a.levels.unwrap_or(3).max(1);
    let chars = match &a.cmd {
        ModformCmd::Lp { chi, .. } => characters(chi.as_deref().unwrap_or(&cfg.char), p, base, cfg.prec, cfg.seed)?,
        ModformCmd::Birch { chi } => vec![character(chi.as_deref().unwrap_or(&cfg.char), p, cfg.prec)?],
        _ => Vec::new(),
    };
    let need = chars.iter().map(|(_, c)| c.conductor_exponent()).max().unwrap_or(0);
    let levels = base.max(need);
    let pipe = Pipeline::build(level, k, p, levels, cfg.prec)?;
    let mut r = Report::new("modform");
    pipe.certificates(&mut r);
    match &a.cmd {
        ModformCmd::Measure { check_additivity, out } => {
            if *check_additivity {
                let list: Vec<String> = [Some(&pipe.l.plus), pipe.l.minus.as_ref()]
                    .into_iter()
                    .flatten()
                    .flat_map(|m| {
                        m.additivity_violations().into_iter().map(move |(d, v)| {
                            format!("sign {} degree {d} level {} residue {}", m.sign, v.level, v.residue)
                        })
                    })
                    .collect();
                let text = if list.is_empty() { "[]".to_string() } else { list.join("\n") };
                r.field("violation_list", &list, text);
            }
            let certs: Vec<_> = pipe.l.plus.moments.iter().map(certify_bounded).collect();
            let text: Vec<String> = certs
                .iter()
                .enumerate()
                .map(|(d, c)| format!("degree {d}: bounded by p^{} through level {}", c.bound_exponent, c.level_checked))
                .collect();
            r.field("certificates_plus", &certs, text.join("\n"));
            if let Some(path) = out {
                let mut doc = BTreeMap::new();
                doc.insert("plus", serde_json::from_str::<serde_json::Value>(&measure_to_json(&pipe.l.plus.moments[0])).expect("json"));
                if let Some(m) = &pipe.l.minus {
                    doc.insert("minus", serde_json::from_str(&measure_to_json(&m.moments[0])).expect("json"));
                }
                let s = serde_json::to_string(&doc).expect("serializable");
                std::fs::write(path, s).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
                r.field("written", &path.display().to_string(), path.display().to_string());
            }
        }
        ModformCmd::Lp { j, .. } => {
            let list: Vec<DirichletCharacter> = chars.iter().map(|(_, c)| c.clone()).collect();
            let values = lp_sweep(&pipe.l, &list, *j)?;
            let two_path = k == 2 && *j == 0;
            let rows = chars
                .par_iter()
                .zip(values)
                .map(|((d, chi), value)| -> CliResult<LpRow> {
                    let e = euler_factor_mtt(chi, *j, &pipe.root)?;
                    let identity = if two_path && (chi.parity() > 0 || pipe.minus.is_some()) {
                        let rhs = interpolation_value(
                            &pipe.plus,
                            pipe.minus.as_ref().map(|m| m as &dyn PeriodValues),
                            &pipe.root,
                            chi,
                        )?;
                        Some(value.congruent(&rhs))
                    } else {
                        None
                    };
                    Ok(LpRow { descriptor: d.to_string(), j: *j, value, euler_factor: e.value, exceptional: e.exceptional, identity })
                })
                .collect::<CliResult<Vec<_>>>()?;
            let checked: Vec<bool> = rows.iter().filter_map(|r| r.identity).collect();
            if let [row] = rows.as_slice() {
                r.field("descriptor", &row.descriptor, row.descriptor.clone())
                    .show("j", &row.j)
                    .field("value", &row.value, row.value.to_string())
                    .field("euler_factor", &row.euler_factor, row.euler_factor.to_string())
                    .show("exceptional", &row.exceptional);
            } else {
                let text: Vec<String> = rows
                    .iter()
                    .map(|row| {
                        format!("{}: {}{}", row.descriptor, row.value, if row.exceptional { " (exceptional)" } else { "" })
                    })
                    .collect();
                r.show("characters", &rows.len()).field("values", &rows, text.join("\n"));
            }
            if !checked.is_empty() {
                r.check("two_path_identity", checked.iter().all(|&b| b));
            }
        }
        ModformCmd::Birch { .. } => {
            let (d, chi) = &chars[0];
            let phi = pipe.symbol(chi.parity())?;
            let v = birch_twisted_value(phi, chi)?;
            r.field("descriptor", &d.to_string(), d.to_string()).field("value", &v, v.to_string());
        }
        ModformCmd::Series { out } => {
            let fam = pipe.l.series_family(cfg.trunc)?;
            let mut lines = Vec::new();
            for b in &fam.branches {
                match weierstrass_invariants(&b.series) {
                    Ok(w) => lines.push(format!("branch {}: mu = {}, lambda = {}", b.t, w.mu, w.lambda)),
                    Err(_) => lines.push(format!("branch {}: zero at precision", b.t)),
                }
            }
            r.field("invariants", &lines, lines.join("\n"));
            let fj: serde_json::Value = serde_json::from_str(&family_to_json(&fam)).expect("json");
            r.field("family", &fj, "(use --format json for the coefficients)");
            if let Some(path) = out {
                std::fs::write(path, family_to_json(&fam))
                    .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
                r.field("written", &path.display().to_string(), path.display().to_string());
            }
        }
        ModformCmd::Export => {
            let moduli = EigenTable::measure_moduli(p, levels);
            let mut out = Vec::new();
            for phi in [Some(&pipe.plus), pipe.minus.as_ref()].into_iter().flatten() {
                let t = EigenTable::from_symbol(phi, &moduli)?;
                out.push(serde_json::from_str::<serde_json::Value>(&eigen_table_to_json(&t)).expect("json"));
            }
            r.field("tables", &out, format!("{} table(s), use --format json", out.len()));
        }
    }
    Ok(r)
}

fn rational_arg(s: &str) -> CliResult<BigRational> {
    s.trim().parse::<BigRational>().map_err(|_| CliError::Usage(format!("bad rational {s:?}")))
}

pub fn cmd_polygon(cfg: &RunConfig, c: &PolygonCmd) -> CliResult<Report> {
    let mut r = Report::new("polygon");
    match c {
        PolygonCmd::Sym { a, q, m, p } => {
            let p = prime(*p, cfg)?;
            let (a, q) = (rational_arg(a)?, rational_arg(q)?);
            if q == BigRational::from_integer(BigInt::from(0)) {
                return Err(CliError::Usage("q must be nonzero".into()));
            }
            let w = vp_rational(p, &q);
            if w < 0 || vp_rational(p, &a) < 0 {
                return Err(CliError::Usage("a and q must be p-integral".into()));
            }
            let poly = sym_power_hecke(p, &a, &q, *m)?;
            let e: Vec<String> = poly.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, x)| if i % 2 == 0 { (-x).to_string() } else { x.to_string() })
                .collect();
            let text: Vec<String> = e.iter().enumerate().map(|(i, x)| format!("e{} = {x}", i + 1)).collect();
            let newton = newton_polygon(&poly)?;
            let hodge = hodge_polygon(&HodgeData::sym_power(w as u32 + 1, *m));
            r.show("p", &p)
                .show("m", m)
                .field("elementary", &e, text.join("\n"))
                .field("newton", &polygon_json(&newton), polygon_text(&newton))
                .field("hodge", &polygon_json(&hodge), polygon_text(&hodge))
                .show("nearly_ordinary", &(newton == hodge));
        }
        PolygonCmd::Ordinary { ap, k, m, p } => {
            let p = prime(*p, cfg)?;
            let rep = sym_power_ordinarity_report(*ap, 1, *k, p, *m)?;
            let e: Vec<String> = rep.elementary.iter().map(|x| x.to_string()).collect();
            r.show("p", &p)
                .show("k", k)
                .show("m", m)
                .field("elementary", &e, e.join(", "))
                .field("newton", &polygon_json(&rep.newton), polygon_text(&rep.newton))
                .field("hodge", &polygon_json(&rep.hodge), polygon_text(&rep.hodge))
                .field(
                    "endpoint",
                    &(rep.endpoint.0, q64_json(&rep.endpoint.1)),
                    format!("({}, {})", rep.endpoint.0, rep.endpoint.1),
                )
                .check("polygons_equal", rep.polygons_equal)
                .check("passes", rep.passes);
        }
        PolygonCmd::Gl4 { nu_vals } => {
            if nu_vals.len() != 2 {
                return Err(CliError::Usage("--nu-vals takes two values".into()));
            }
            let v = [parse_q64(&nu_vals[0])?, parse_q64(&nu_vals[1])?];
            let rep = gl4_ordinarity_report(v);
            r.field("nu_valuations", &[q64_json(&v[0]), q64_json(&v[1])], format!("{}, {}", v[0], v[1]))
                .field("newton", &polygon_json(&rep.newton), polygon_text(&rep.newton))
                .field("hodge", &polygon_json(&rep.hodge), polygon_text(&rep.hodge))
                .field("lambda_valuation", &q64_json(&rep.lambda_valuation), rep.lambda_valuation.to_string())
                .show("nearly_ordinary", &rep.nearly_ordinary);
        }
    }
    Ok(r)
}

pub fn cmd_symcube(_cfg: &RunConfig, c: &SymcubeCmd) -> CliResult<Report> {
    let SymcubeCmd::Quotient { f, g, levels } = c;
    let fam_f = parse_family(&read(f)?)?;
    let fam_g = parse_family(&read(g)?)?;
    let rep = symcube_quotient(&fam_f, &fam_g, *levels)?;
    let mut r = Report::new("symcube");
    r.show("p", &rep.p);
    let mut text = Vec::new();
    let mut json = Vec::new();
    for b in &rep.branches {
        let cs: Vec<String> = b.quotient.coeffs().iter().map(|c| c.to_string()).collect();
        text.push(format!("branch {}{}: {}", b.t, if b.remainder { " (remainder)" } else { "" }, cs.join(", ")));
        json.push(serde_json::json!({"t": b.t, "remainder": b.remainder, "coeffs": b.quotient.coeffs()}));
    }
    r.field("branches", &json, text.join("\n"));
    let zeros: Vec<String> = rep
        .zeros
        .iter()
        .map(|z| format!("t = {}, u = zeta_{}^{}", z.t, rep.p.pow(z.zero.level), z.zero.exponent))
        .collect();
    r.field("zeros", &rep.zeros, if zeros.is_empty() { "none".to_string() } else { zeros.join("\n") });
    r.show("integral", &rep.integral);
    if let Some(w) = rep.witness {
        let ok = pointwise_ratio(&fam_f, &fam_g, w).and_then(|x| Ok(x.congruent(&rep.quotient_at(w)?)));
        r.check("pointwise_consistent", ok.unwrap_or(false));
    }
    r.field("assumptions", &rep.assumptions, rep.assumptions.join("\n"));
    Ok(r)
}

pub fn cmd_provider(_cfg: &RunConfig, c: &ProviderCmd) -> CliResult<Report> {
    let ProviderCmd::Check { file, levels, convention } = c;
    let mut r = Report::new("provider");
    match parse_provider(&read(file)?)? {
        ProviderFile::Gl4(t) => {
            let d = gl4_distribution(&t, *levels)?;
            r.field("kind", &"gl4", "gl4")
                .field("kappa", &d.kappa, d.kappa.to_string())
                .show("violations", &d.violations.len())
                .check("additive", d.additive);
        }
        ProviderFile::Gl32(t) => {
            let conv = match convention {
                Convention::Independent => SlotConvention::Independent,
                Convention::Tied => SlotConvention::Tied,
            };
            let bad = gl32_relation_sweep(&t, *levels, conv)?;
            let nodes: Vec<String> = bad.iter().map(|((i, j, y, m), _)| format!("({i}, {j}, {y}) mod p^{m}")).collect();
            r.field("kind", &"gl32", "gl32")
                .field("nonzero_residuals", &nodes, if nodes.is_empty() { "none".to_string() } else { nodes.join("\n") })
                .check("relation", bad.is_empty());
            if t.meta.is_ordinary() {
                let d = gl32_measure(&t, *levels)?;
                r.show("measure_violations", &d.violations.len()).check("additive", d.additive);
            }
        }
    }
    Ok(r)
}
