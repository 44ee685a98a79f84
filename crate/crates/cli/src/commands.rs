//! One function per subcommand. Each returns a [`CommandResult`] on success
//! and leaves error mapping to the caller.

use ore_core::fractions::{convert_side, fraction_equal, make_minimal_certified, OperatorFraction};
use ore_core::modules::{
    cor34_witness, isotropy_class, kernel_polynomial, skew_pair_report, thm33_witness, LeftModule, NaturalModule,
    SearchOptions, SkewReport, WitnessTrace,
};
use ore_core::orepoly;
use ore_core::regularize::{regularize, shifted};
use ore_core::suites::{run_all, SuiteSizes};
use ore_core::{Error, Operator, OperatorMatrix, Rational, RationalFunction, Result, Side};
use serde_json::{json, Value};

use crate::emit::{CommandResult, Emit, Record, Status};
use crate::input::{self, Module, Operands};

/// Runs `$body` with `$v` bound to the operand vector of either kind.
macro_rules! with_kind {
    ($ops:expr, $v:ident => $body:expr) => {
        match $ops {
            Operands::Scalar($v) => $body,
            Operands::Matrix($v) => $body,
        }
    };
}

pub fn gcd(a: &str, b: &str, side: Side, full: bool) -> Result<CommandResult> {
    with_kind!(input::operands(&[a, b])?, v => gcd_of(&v[0], &v[1], side, full))
}

fn gcd_of<R: Emit>(a: &R, b: &R, side: Side, full: bool) -> Result<CommandResult> {
    let g = R::gcd(a, b, side)?;
    let rec = Record::new()
        .text("side", side.as_str())
        .ring("d", &g.d)
        .ring("u", &g.u)
        .ring("v", &g.v);
    if !full {
        return Ok(rec.done());
    }
    let combined = match side {
        Side::Right => g.u.times(a).plus(&g.v.times(b)),
        Side::Left => a.times(&g.u).plus(&b.times(&g.v)),
    };
    let divides = match side {
        Side::Right => g.a1.times(&g.d) == *a && g.b1.times(&g.d) == *b,
        Side::Left => g.d.times(&g.a1) == *a && g.d.times(&g.b1) == *b,
    };
    Ok(rec
        .ring("a1", &g.a1)
        .ring("b1", &g.b1)
        .value("verified", Value::from(combined == g.d && divides))
        .done())
}

pub fn lcm(a: &str, b: &str, side: Side) -> Result<CommandResult> {
    with_kind!(input::operands(&[a, b])?, v => lcm_of(&v[0], &v[1], side))
}

fn lcm_of<R: Emit>(a: &R, b: &R, side: Side) -> Result<CommandResult> {
    let l = R::lcm(a, b, side)?;
    Ok(Record::new()
        .text("side", side.as_str())
        .ring("m", &l.m)
        .ring("a1", &l.a1)
        .ring("b1", &l.b1)
        .done())
}

pub fn divide(a: &str, b: &str, side: Side) -> Result<CommandResult> {
    let (a, b) = scalar_pair(a, b, "divide")?;
    let r = orepoly::divide(&a, &b, side)?;
    Ok(Record::new()
        .text("side", side.as_str())
        .ring("quotient", &r.quotient)
        .ring("remainder", &r.remainder)
        .done())
}

fn scalar_pair(a: &str, b: &str, what: &str) -> Result<(Operator, Operator)> {
    match input::operands(&[a, b])? {
        Operands::Scalar(v) => {
            let mut it = v.into_iter();
            Ok((it.next().unwrap(), it.next().unwrap()))
        }
        Operands::Matrix(_) => Err(Error::KindMismatch(format!("{what} takes operators"))),
    }
}

pub fn adjoint(a: &str) -> Result<CommandResult> {
    with_kind!(input::operands(&[a])?, v => Ok(Record::new().ring("adjoint", &v[0].adjoint()).done()))
}

pub fn minfrac(num: &str, den: &str, side: Side) -> Result<CommandResult> {
    with_kind!(input::operands(&[num, den])?, v => minfrac_of(&v[0], &v[1], side))
}

fn minfrac_of<R: Emit>(num: &R, den: &R, side: Side) -> Result<CommandResult> {
    let f = OperatorFraction::new(num.clone(), den.clone(), side)?;
    let m = make_minimal_certified(&f)?;
    Ok(Record::new()
        .text("side", side.as_str())
        .ring("num", &m.fraction.num)
        .ring("den", &m.fraction.den)
        .ring("gcd", &m.gcd_stripped)
        .ring("u", &m.u)
        .ring("v", &m.v)
        .done())
}

pub fn convert(num: &str, den: &str, side: Side) -> Result<CommandResult> {
    with_kind!(input::operands(&[num, den])?, v => convert_of(&v[0], &v[1], side))
}

fn convert_of<R: Emit>(num: &R, den: &R, side: Side) -> Result<CommandResult> {
    let g = convert_side(&OperatorFraction::new(num.clone(), den.clone(), side)?)?;
    Ok(Record::new()
        .text("side", g.side.as_str())
        .ring("num", &g.num)
        .ring("den", &g.den)
        .done())
}

pub fn equal(texts: [&str; 4], side: Side) -> Result<CommandResult> {
    with_kind!(input::operands(&texts)?, v => equal_of(&v, side))
}

fn equal_of<R: Emit>(v: &[R], side: Side) -> Result<CommandResult> {
    let f = OperatorFraction::new(v[0].clone(), v[1].clone(), side)?;
    let g = OperatorFraction::new(v[2].clone(), v[3].clone(), side)?;
    Ok(Record::new().value("equal", Value::from(fraction_equal(&f, &g)?)).done())
}

fn as_matrix(ops: Operands) -> OperatorMatrix {
    match ops {
        Operands::Scalar(mut v) => OperatorMatrix::diag(vec![v.remove(0)]),
        Operands::Matrix(mut v) => v.remove(0),
    }
}

pub fn ddet_degree(m: &str) -> Result<CommandResult> {
    let m = as_matrix(input::operands(&[m])?);
    let deg = m.ddet_degree().map_or(Value::from("singular"), Value::from);
    Ok(Record::new().value("ddet_degree", deg).done())
}

pub fn hermite(m: &str) -> Result<CommandResult> {
    let m = as_matrix(input::operands(&[m])?);
    let cert = m.row_hermite();
    let verified = &cert.u * &m == cert.h && cert.replay_inverse() == m;
    Ok(Record::new()
        .ring("h", &cert.h)
        .ring("u", &cert.u)
        .value("row_operations", Value::from(cert.ops.len()))
        .value("verified", Value::from(verified))
        .done())
}

pub fn regularize_cmd(a: &str, b: &str, side: Side, budget: usize, seed: u64) -> Result<CommandResult> {
    with_kind!(input::operands(&[a, b])?, v => regularize_of(&v[0], &v[1], side, budget, seed))
}

fn regularize_of<R: Emit>(a: &R, b: &R, side: Side, budget: usize, seed: u64) -> Result<CommandResult> {
    let q = regularize(a, b, side, budget, seed)?;
    Ok(Record::new()
        .text("side", side.as_str())
        .ring("q", &q)
        .ring("shifted", &shifted(a, &q, b, side))
        .done())
}

/// Inputs shared by the two witness commands.
pub struct WitnessArgs<'a> {
    pub a: &'a str,
    pub b: &'a str,
    pub x: &'a str,
    pub y: &'a str,
    pub modulus: Option<&'a str>,
}

fn trace_record<R: Emit>(rec: Record, t: &WitnessTrace<R>) -> Record {
    let identities: serde_json::Map<String, Value> = t
        .identities()
        .iter()
        .map(|(name, ok)| (name.to_string(), Value::from(*ok)))
        .collect();
    let shift = t.shift.as_ref().map_or(Value::Null, |s| s.emit());
    rec.ring("a", &t.a)
        .ring("b", &t.b)
        .value("shift", shift)
        .ring("m", &t.m)
        .ring("a1", &t.a1)
        .ring("b1", &t.b1)
        .ring("u", &t.u)
        .ring("v", &t.v)
        .ring("p", &t.p)
        .ring("q", &t.q)
        .value("identities", Value::Object(identities))
}

/// Dispatches a witness computation over the ring kind and the module.
macro_rules! in_module {
    ($args:expr, $extra:expr, $run:ident) => {{
        let args = $args;
        let extra = $extra;
        match input::operands(&[args.a, args.b])? {
            Operands::Scalar(v) => match input::module(args.modulus, 1)? {
                Module::Natural(m) => {
                    let x = input::column(args.x, 1)?;
                    let y = input::column(args.y, 1)?;
                    $run(&v[0], &v[1], &x, &y, &m, &extra)
                }
                Module::Cyclic(m) => {
                    let x = input::residue(args.x, &m)?;
                    let y = input::residue(args.y, &m)?;
                    $run(&v[0], &v[1], &x, &y, &m, &extra)
                }
            },
            Operands::Matrix(v) => {
                let dim = v[0].size();
                match input::module(args.modulus, dim)? {
                    Module::Natural(m) => {
                        let x = input::column(args.x, dim)?;
                        let y = input::column(args.y, dim)?;
                        $run(&v[0], &v[1], &x, &y, &m, &extra)
                    }
                    Module::Cyclic(_) => unreachable!("cyclic modules are scalar"),
                }
            }
        }
    }};
}

pub fn witness_thm33(args: WitnessArgs<'_>, opts: SearchOptions) -> Result<CommandResult> {
    fn run<R: Emit, M: LeftModule<R>>(
        a: &R,
        b: &R,
        x: &M::Elem,
        y: &M::Elem,
        module: &M,
        opts: &SearchOptions,
    ) -> Result<CommandResult> {
        let (z, trace) = thm33_witness(a, b, x, y, module, opts)?;
        let rec = Record::new().text("z", module.render(&z));
        Ok(trace_record(rec, &trace).value("verified", Value::from(trace.verify())).done())
    }
    in_module!(args, opts, run)
}

pub fn witness_cor34(args: WitnessArgs<'_>, eps: &str, opts: SearchOptions) -> Result<CommandResult> {
    fn run<R: Emit, M: LeftModule<R>>(
        a: &R,
        b: &R,
        x: &M::Elem,
        y: &M::Elem,
        module: &M,
        (opts, eps): &(SearchOptions, Rational),
    ) -> Result<CommandResult> {
        let z = cor34_witness(a, b, x, y, eps, module, opts)?;
        let verified = module.act(b, &z)? == *x && module.act(a, &z)? == *y;
        Ok(Record::new()
            .text("epsilon", eps.to_string())
            .text("z", module.render(&z))
            .value("verified", Value::from(verified))
            .done())
    }
    in_module!(args, (opts, input::constant(eps)?), run)
}

pub fn isotropy(a: &str, b: &str, xs: Option<(&str, &str)>, modulus: Option<&str>) -> Result<CommandResult> {
    match input::operands(&[a, b])? {
        Operands::Scalar(v) => {
            let report = match input::module(modulus, 1)? {
                Module::Natural(m) => skew_pair_report(&v[0], &v[1], &m)?,
                Module::Cyclic(m) => skew_pair_report(&v[0], &v[1], &m)?,
            };
            isotropy_record(&v[0], &v[1], report, xs, 1)
        }
        Operands::Matrix(v) => {
            let dim = v[0].size();
            let report = match input::module(modulus, dim)? {
                Module::Natural(m) => skew_pair_report(&v[0], &v[1], &m)?,
                Module::Cyclic(_) => unreachable!("cyclic modules are scalar"),
            };
            isotropy_record(&v[0], &v[1], report, xs, dim)
        }
    }
}

fn isotropy_record<R>(a: &R, b: &R, report: SkewReport, xs: Option<(&str, &str)>, dim: usize) -> Result<CommandResult>
where
    R: Emit,
    NaturalModule: LeftModule<R, Elem = Vec<RationalFunction>>,
{
    let mut rec = Record::new()
        .value("ring_level", Value::from(report.ring_level))
        .value("module_level", report.module_level.map_or(Value::Null, Value::from));
    if let Some((x, x2)) = xs {
        let class = isotropy_class(a, b, &input::column(x, dim)?, &input::column(x2, dim)?)?;
        rec = rec
            .text("class", class.to_string())
            .value("class_is_zero", Value::from(class.is_zero()));
    }
    Ok(rec.done())
}

pub fn kernel_poly(b: &str, degree: usize) -> Result<CommandResult> {
    let b = input::operator(b)?;
    let basis: Vec<String> = kernel_polynomial(&b, degree)?.iter().map(|p| p.to_string()).collect();
    Ok(Record::new()
        .value("degree_bound", Value::from(degree))
        .value("basis", json!(basis))
        .done())
}

pub fn selftest(seed: u64, trials: Option<usize>, max_order: Option<usize>) -> Result<CommandResult> {
    let mut sizes = trials.map_or_else(SuiteSizes::default, SuiteSizes::uniform);
    if let Some(k) = max_order {
        sizes.max_order = k;
    }
    let reports = run_all(&sizes, seed);
    let mut text = String::new();
    let mut suites = Vec::new();
    for r in &reports {
        let verdict = if r.passed() { "PASS" } else { "FAIL" };
        text.push_str(&format!(
            "{verdict} {}: {}/{} in {:.2?}\n",
            r.name, r.passes, r.trials, r.elapsed
        ));
        for f in r.failures.iter().take(3) {
            text.push_str(&format!("  seed {}: {}\n", f.seed, f.inputs));
        }
        suites.push(json!({
            "name": r.name,
            "trials": r.trials,
            "passes": r.passes,
            "failed_seeds": r.failures.iter().map(|f| f.seed).collect::<Vec<_>>(),
            "seconds": r.elapsed.as_secs_f64(),
        }));
    }
    let all = reports.iter().all(|r| r.passed());
    Ok(CommandResult {
        status: if all { Status::Ok } else { Status::Precondition },
        payload: json!({ "seed": seed, "passed": all, "suites": suites }),
        text,
    })
}
