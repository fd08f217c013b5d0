//! `hyperquad` command-line front end.
//!
//! Results go to stdout, diagnostics to stderr. Exit codes: 0 success or
//! found, 1 legitimate empty/negative result, 2 malformed input.

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use hyperquad::acceptance;
use hyperquad::factor::{factor_squarefree, shape, squarefree};
use hyperquad::fields::{Field, FpElem, PrimeField, RatFunc, SymRat, SymVars};
use hyperquad::par::Exec;
use hyperquad::parse::{parse_expr, parse_poly};
use hyperquad::projective::{
    find_projective, gen_triple, h_poly, order_power, quartic_family, ProjParams, SearchResult,
};
use hyperquad::riccati::{
    quintic_check_instantiated, quintic_check_symbolic, riccati_numerator, QuinticReport,
};
use hyperquad::table::{make_table_with, render_text, scan, to_json_lines};
use hyperquad::upoly::UPoly;

#[derive(Parser)]
#[command(
    name = "hyperquad",
    version,
    about = "Hyperquadratic power series over F_p(T)"
)]
struct Cli {
    /// Emit JSON (also enabled by HYPERQUAD_JSON=1).
    #[arg(long, global = true)]
    json: bool,
    /// Disable multi-threaded table and scan evaluation.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Sym,
    Ratfunc,
}

#[derive(Subcommand)]
enum Command {
    /// Riccati numerator Qr, resultant and discriminant of a polynomial.
    Riccati {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        poly: String,
        /// `name=EXPR`, applied in order; derivatives follow automatically.
        #[arg(long)]
        subst: Vec<String>,
        /// Comma-separated base symbols for sym mode.
        #[arg(long, default_value = "a,b,c,d")]
        vars: String,
    },
    /// Search for u x^(r+1) + v x^r + w x + z divisible by P, r = p^order.
    FindH {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        order: u32,
        #[arg(long)]
        poly: String,
    },
    /// The quintic triple (a, b, c) generated by a.
    Triple {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
    },
    /// Table of triples and their projective polynomials.
    Tables {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        order: u32,
        /// Refuse orders above this (r = p^order grows fast).
        #[arg(long, default_value_t = 2)]
        max_order: u32,
    },
    /// The quartic x^4 + a x^2 + b x - a^2/12 and its projective polynomial.
    Quartic {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        /// For p = 7, also check the displayed degree-8 factorization.
        #[arg(long)]
        verify_identity: bool,
    },
    /// Riccati coefficients b4..b0 of the constrained quintic.
    QuinticCheck {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        p: Option<u64>,
        /// Coefficients in T (ratfunc mode); default a T^3, b T^4, c T^5
        /// with (a, b, c) the triple generated by 1.
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        c: Option<String>,
    },
    /// Degrees of the irreducible factors of a squarefree polynomial.
    FactorShape {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        poly: String,
        /// Also print the factors, split with this seed.
        #[arg(long)]
        factors: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Composes the Möbius map of H with its Frobenius twists m times.
    OrderPower {
        #[arg(long)]
        p: u64,
        /// `u,v,w,z`
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        m: u32,
    },
    /// Per-prime hit counts of the table search.
    Scan {
        /// Comma-separated primes; `lo..hi` adds every prime p = 5 mod 6 in range.
        #[arg(long)]
        primes: String,
        #[arg(long, default_value_t = 1)]
        order: u32,
        /// Refuse orders above this (r = p^order grows fast).
        #[arg(long, default_value_t = 2)]
        max_order: u32,
    },
    /// Runs the acceptance checks.
    Selftest,
}

/// Failure with its exit code.
struct Fail(u8, String);

impl From<hyperquad::Error> for Fail {
    fn from(e: hyperquad::Error) -> Self {
        Fail(2, e.to_string())
    }
}

fn input(msg: impl Into<String>) -> Fail {
    Fail(2, msg.into())
}

struct Out {
    json: bool,
    buf: String,
}

impl Out {
    fn line(&mut self, s: impl AsRef<str>) {
        self.buf.push_str(s.as_ref());
        self.buf.push('\n');
    }

    fn value(&mut self, v: Value) {
        self.line(v.to_string());
    }
}

fn field(p: u64) -> Result<PrimeField, Fail> {
    Ok(PrimeField::new(p)?)
}

fn need_p(p: Option<u64>) -> Result<PrimeField, Fail> {
    field(p.ok_or_else(|| input("--p is required in this mode"))?)
}

fn params_json(h: &ProjParams<FpElem>) -> Value {
    json!({"u": h.u.value(), "v": h.v.value(), "w": h.w.value(), "z": h.z.value()})
}

fn tuple(h: &ProjParams<FpElem>) -> String {
    format!("({},{},{},{})", h.u, h.v, h.w, h.z)
}

fn search_report(out: &mut Out, res: &SearchResult<FpElem>) -> Result<(), Fail> {
    if out.json {
        let cands: Vec<Value> = res
            .candidates
            .iter()
            .map(|c| {
                let mut v = params_json(&c.params);
                v["degenerate"] = json!(c.degenerate);
                v
            })
            .collect();
        out.value(json!({
            "r": res.r,
            "dimension": res.dimension,
            "H": res.hyperquadratic().map(params_json),
            "candidates": cands,
        }));
        return Ok(());
    }
    out.line(format!(
        "r = {}, solution dimension {}",
        res.r, res.dimension
    ));
    for c in &res.candidates {
        let tag = if c.degenerate { "  (degenerate)" } else { "" };
        out.line(format!("(u,v,w,z) = {}{tag}", tuple(&c.params)));
    }
    match res.hyperquadratic() {
        Some(h) => out.line(format!("H = {}", h_poly(h)?)),
        None => out.line("no nondegenerate H"),
    }
    Ok(())
}

fn riccati_cmd<F>(
    out: &mut Out,
    p: &UPoly<F>,
    subst: impl Fn(&F) -> Result<F, Fail>,
) -> Result<(), Fail>
where
    F: hyperquad::fields::Differential,
{
    let r = riccati_numerator(p)?;
    let (res, disc) = (subst(&r.resultant)?, subst(&r.disc)?);
    let qr = UPoly::new(
        p.ctx(),
        (0..p.degree().unwrap())
            .map(|i| subst(&r.qr.coeff(i)))
            .collect::<Result<_, _>>()?,
    );
    if out.json {
        out.value(json!({
            "resultant": res.to_string(),
            "disc": disc.to_string(),
            "qr": (0..p.degree().unwrap()).map(|i| qr.coeff(i).to_string()).collect::<Vec<_>>(),
        }));
    } else {
        out.line(format!("R = {res}"));
        out.line(format!("disc = {disc}"));
        for i in (0..p.degree().unwrap()).rev() {
            out.line(format!("Qr[x^{i}] = {}", qr.coeff(i)));
        }
    }
    Ok(())
}

fn quintic_report<F: Field>(out: &mut Out, rep: &QuinticReport<F>) -> u8 {
    let b = rep.coefficients();
    let ok = rep.conditions_hold();
    if out.json {
        out.value(json!({
            "b": b.iter().rev().map(|c| c.to_string()).collect::<Vec<_>>(),
            "conditions_hold": ok,
        }));
    } else {
        for (i, c) in b.iter().enumerate().rev() {
            out.line(format!("b{i} = {c}"));
        }
        out.line(format!("b4 = b3 = b2 = b0 = 0: {ok}"));
    }
    u8::from(!ok)
}

fn parse_primes(text: &str) -> Result<Vec<PrimeField>, Fail> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: u64 = lo
                .trim()
                .parse()
                .map_err(|_| input(format!("bad range {part:?}")))?;
            let hi: u64 = hi
                .trim()
                .parse()
                .map_err(|_| input(format!("bad range {part:?}")))?;
            out.extend(
                (lo..hi)
                    .filter(|&n| n % 6 == 5 && hyperquad::fields::is_prime(n))
                    .map(|n| PrimeField::new(n).unwrap()),
            );
        } else {
            let n = part
                .parse()
                .map_err(|_| input(format!("bad prime {part:?}")))?;
            out.push(field(n)?);
        }
    }
    if out.is_empty() {
        return Err(input("no primes given"));
    }
    Ok(out)
}

fn check_order(order: u32, max_order: u32) -> Result<(), Fail> {
    if order > max_order {
        return Err(input(format!(
            "order {order} exceeds --max-order {max_order}"
        )));
    }
    Ok(())
}

fn run(cli: Cli, out: &mut Out) -> Result<u8, Fail> {
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    match cli.command {
        Command::Riccati {
            mode: Mode::Sym,
            poly,
            subst,
            vars,
            ..
        } => {
            let names: Vec<&str> = vars
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .collect();
            let vars = SymVars::new(&names)?;
            let p = parse_poly::<SymRat>(&poly, &vars)?;
            let mut rules = Vec::new();
            for s in &subst {
                let (name, expr) = s
                    .split_once('=')
                    .ok_or_else(|| input(format!("substitution {s:?} is not name=EXPR")))?;
                rules.push((name.trim().to_string(), parse_expr::<SymRat>(expr, &vars)?));
            }
            riccati_cmd(out, &p, |c| {
                let mut c = c.clone();
                for (name, e) in &rules {
                    c = c.substitute(&[(name.as_str(), e.clone())], true)?;
                }
                Ok(c)
            })?;
            Ok(0)
        }
        Command::Riccati {
            mode: Mode::Ratfunc,
            p,
            poly,
            subst,
            ..
        } => {
            if !subst.is_empty() {
                return Err(input("--subst applies to sym mode only"));
            }
            let k = need_p(p)?;
            let p = parse_poly::<RatFunc>(&poly, &k)?;
            riccati_cmd(out, &p, |c| Ok(c.clone()))?;
            Ok(0)
        }
        Command::FindH { p, order, poly } => {
            let k = field(p)?;
            let poly = parse_poly::<FpElem>(&poly, &k)?;
            let res = find_projective(&poly, order)?;
            search_report(out, &res)?;
            Ok(if res.hyperquadratic().is_some() { 0 } else { 1 })
        }
        Command::Triple { p, a } => {
            let k = field(p)?;
            let t = gen_triple(k.elem(a))?;
            let q = t.quintic();
            if out.json {
                out.value(json!({"p": p, "a": t.a.value(), "b": t.b.value(), "c": t.c.value(), "P": q.to_string()}));
            } else {
                out.line(format!("(a,b,c) = ({},{},{})", t.a, t.b, t.c));
                out.line(format!("P = {q}"));
            }
            Ok(0)
        }
        Command::Tables {
            p,
            order,
            max_order,
        } => {
            check_order(order, max_order)?;
            let rows = make_table_with(field(p)?, order, exec)?;
            if out.json {
                out.buf.push_str(&to_json_lines(&rows));
            } else {
                out.buf.push_str(&render_text(p, &rows));
            }
            Ok(0)
        }
        Command::Quartic {
            p,
            a,
            b,
            verify_identity,
        } => {
            let k = field(p)?;
            let (a, b) = (k.elem(a), k.elem(b));
            let (q, res) = quartic_family(a, b)?;
            if !out.json {
                out.line(format!("P = {q}"));
            }
            search_report(out, &res)?;
            let mut code = u8::from(res.hyperquadratic().is_none());
            if verify_identity {
                if p != 7 {
                    eprintln!("note: --verify-identity applies to p = 7 only; skipped");
                } else {
                    let ok = seven_identity(a, b, &q, &res)?;
                    out.line(if out.json {
                        json!({"identity_holds": ok}).to_string()
                    } else {
                        format!("p = 7 identity: {}", if ok { "holds" } else { "FAILS" })
                    });
                    code = code.max(u8::from(!ok));
                }
            }
            Ok(code)
        }
        Command::QuinticCheck {
            mode: Mode::Sym, ..
        } => Ok(quintic_report(out, &quintic_check_symbolic()?)),
        Command::QuinticCheck {
            mode: Mode::Ratfunc,
            p,
            a,
            b,
            c,
        } => {
            let k = need_p(p)?;
            let t = gen_triple(k.elem(1))?;
            let parse = |s: Option<String>, c: FpElem, e: usize| match s {
                Some(s) => parse_expr::<RatFunc>(&s, &k),
                None => Ok(RatFunc::monomial(c.value() as i64, e, &k)),
            };
            let (a, b, c) = (parse(a, t.a, 3)?, parse(b, t.b, 4)?, parse(c, t.c, 5)?);
            let rep = quintic_check_instantiated(&a, &b, &c)?;
            Ok(quintic_report(out, &rep))
        }
        Command::FactorShape {
            p,
            poly,
            factors,
            seed,
        } => {
            let k = field(p)?;
            let f = parse_poly::<FpElem>(&poly, &k)?;
            if f.degree().unwrap_or(0) == 0 {
                return Err(input("factor-shape needs a nonconstant polynomial"));
            }
            if !squarefree(&f)? {
                return Err(input("polynomial is not squarefree"));
            }
            let s = shape(&f)?;
            let parts = if factors {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                Some(factor_squarefree(&f.monic()?, &mut rng)?)
            } else {
                None
            };
            if out.json {
                let mut v = json!({"shape": s.to_string()});
                if let Some(fs) = &parts {
                    v["factors"] = json!(fs.iter().map(|g| g.to_string()).collect::<Vec<_>>());
                }
                out.value(v);
            } else {
                out.line(s.to_string());
                for g in parts.iter().flatten() {
                    out.line(g.to_string());
                }
            }
            Ok(0)
        }
        Command::OrderPower { p, h, t, m } => {
            let k = field(p)?;
            let vals: Vec<i64> = h
                .split(',')
                .map(|s| s.trim().parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|_| input(format!("--h {h:?} is not u,v,w,z")))?;
            let [u, v, w, z] = vals[..] else {
                return Err(input(format!("--h {h:?} needs four integers")));
            };
            let params = ProjParams::new(k.elem(u), k.elem(v), k.elem(w), k.elem(z), t)?;
            let res = order_power(&params, m)?.normalized();
            if out.json {
                let mut v = params_json(&res);
                v["t"] = json!(res.t);
                out.value(v);
            } else {
                out.line(format!("(u,v,w,z) = {}, t = {}", tuple(&res), res.t));
            }
            Ok(0)
        }
        Command::Scan {
            primes,
            order,
            max_order,
        } => {
            check_order(order, max_order)?;
            let primes = parse_primes(&primes)?;
            let sums = scan(&primes, order, exec)?;
            for s in &sums {
                if out.json {
                    out.value(serde_json::to_value(s).expect("plain struct"));
                } else {
                    out.line(format!(
                        "p = {:>4}  order {}  rows {:>4}  hits {:>4}  degenerate {:>4}  misses {:>4}",
                        s.p, s.order, s.rows, s.hits, s.degenerate_only, s.misses
                    ));
                }
            }
            Ok(0)
        }
        Command::Selftest => {
            let outcomes = acceptance::run_all();
            let mut ok = true;
            for o in &outcomes {
                ok &= o.passed;
                if out.json {
                    out.value(json!({
                        "id": o.id, "name": o.name, "passed": o.passed,
                        "detail": o.detail, "seconds": o.elapsed.as_secs_f64(),
                    }));
                } else {
                    out.line(o.to_string());
                }
            }
            Ok(u8::from(!ok))
        }
    }
}

/// `a x^8 + 3b x^7 + 4b(b^2+4a^3) x + 2a^2(b^2+a^3)` factors as the quartic
/// times `a x^4 + 3b x^3 + 6a^2 x^2 + 3ab x + 4(b^2+a^3)`, and is the
/// projective polynomial found for P.
fn seven_identity(
    a: FpElem,
    b: FpElem,
    q: &UPoly<FpElem>,
    res: &SearchResult<FpElem>,
) -> Result<bool, Fail> {
    let k = a.field();
    let n = |x: i64| k.elem(x);
    let (a2, a3, b2) = (a * a, a * a * a, b * b);
    let lhs = UPoly::new(
        &k,
        vec![
            n(2) * a2 * (b2 + a3),
            n(4) * b * (b2 + n(4) * a3),
            n(0),
            n(0),
            n(0),
            n(0),
            n(0),
            n(3) * b,
            a,
        ],
    );
    let cofactor = UPoly::new(
        &k,
        vec![n(4) * (b2 + a3), n(3) * a * b, n(6) * a2, n(3) * b, a],
    );
    let mut ok = q * &cofactor == lhs;
    if let Some(h) = res.hyperquadratic() {
        let hp = h_poly(h)?;
        let lead = |f: &UPoly<FpElem>| f.leading().copied().unwrap_or(n(0));
        ok &= hp.scale(&lead(&lhs)) == lhs.scale(&lead(&hp));
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json || std::env::var("HYPERQUAD_JSON").is_ok_and(|v| v == "1");
    let mut out = Out {
        json,
        buf: String::new(),
    };
    let code = match run(cli, &mut out) {
        Ok(code) => code,
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    };
    let mut stdout = std::io::stdout().lock();
    if stdout
        .write_all(out.buf.as_bytes())
        .and_then(|_| stdout.flush())
        .is_err()
    {
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
