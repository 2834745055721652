//! Turning parsed instance files into presentations and maps.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cli::expr::{eval, eval_raw, parse, Expr, RawPoly, Scope};
use crate::cli::instance_file::{InstanceFile, Line};
use crate::error::{Error, Result};
use crate::ncalg::{
    BasisRuleMap, Elem, ExtensionMode, GeneratorSpec, Monomial, Presentation, PresentationBuilder, TensorElem,
};

pub(crate) fn at<T>(line: &Line, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::InstanceFile { .. } => e,
        other => line.err(other.to_string()),
    })
}

/// `gen NAME [invertible] [weight W]` or `form NAME [weight W]`.
pub(crate) fn generator_spec(line: &Line) -> Result<GeneratorSpec> {
    let mut words = line.rest.split_whitespace();
    let name = words.next().ok_or_else(|| line.err("missing generator name"))?;
    let mut invertible = false;
    let mut weight = 0i32;
    while let Some(w) = words.next() {
        match w {
            "invertible" if line.keyword == "gen" => invertible = true,
            "weight" => {
                let v = words.next().ok_or_else(|| line.err("missing weight"))?;
                weight = v.parse().map_err(|_| line.err(format!("bad weight `{v}`")))?;
            }
            other => return Err(line.err(format!("unexpected `{other}`"))),
        }
    }
    Ok(if line.keyword == "gen" {
        GeneratorSpec::algebra(name, invertible, weight)
    } else {
        GeneratorSpec::form(name, weight)
    })
}

pub(crate) fn param_of(file: &InstanceFile) -> Result<String> {
    Ok(file.one("param")?.map(|l| l.rest.trim().to_string()).unwrap_or_else(|| "q".into()))
}

fn two_letters(line: &Line, lhs: &str, b: &PresentationBuilder) -> Result<(usize, usize)> {
    let e = at(line, parse(lhs))?;
    match e {
        Expr::Mul(x, y) | Expr::Wedge(x, y) => match (*x, *y) {
            (Expr::Sym(a), Expr::Sym(c)) => {
                let find = |s: &str| b.index_of(s).ok_or_else(|| line.err(format!("unknown generator `{s}`")));
                Ok((find(&a)?, find(&c)?))
            }
            _ => Err(line.err("relation left side must be a product of two generators")),
        },
        _ => Err(line.err("relation left side must be a product of two generators")),
    }
}

fn raw(line: &Line, src: &str, b: &PresentationBuilder, param: &str) -> Result<RawPoly> {
    let e = at(line, parse(src))?;
    at(line, eval_raw(&e, b, param, &BTreeMap::new()))
}

/// Generators, relations, differentials and cap of a file; the cap defaults
/// to 1 when forms are declared.
pub(crate) fn presentation(file: &InstanceFile, name: &str) -> Result<Arc<Presentation>> {
    let param = param_of(file)?;
    let mut b = Presentation::builder(name).param(&param);
    for l in file.lines.iter().filter(|l| l.keyword == "gen" || l.keyword == "form") {
        b.add_generator(generator_spec(l)?);
    }
    add_relations(file, &mut b, &param)?;
    b.set_cap(match file.one("cap")? {
        Some(l) => l.int()? as u32,
        None => u32::from(b.generators().iter().any(|g| g.form_degree > 0)),
    });
    at_build(file, b)
}

pub(crate) fn at_build(file: &InstanceFile, b: PresentationBuilder) -> Result<Arc<Presentation>> {
    b.build().map_err(|e| Error::InstanceFile { line: file.lines.first().map_or(1, |l| l.no), msg: e.to_string() })
}

pub(crate) fn add_relations(file: &InstanceFile, b: &mut PresentationBuilder, param: &str) -> Result<()> {
    for l in file.all("rel") {
        let (lhs, rhs) = l.equation()?;
        let (y, x) = two_letters(l, lhs, b)?;
        let poly = raw(l, rhs, b, param)?;
        b.add_relation(y, x, poly);
    }
    let mut seen = BTreeMap::new();
    for l in file.all("d") {
        let (lhs, rhs) = l.equation()?;
        let g = b.index_of(lhs).ok_or_else(|| l.err(format!("unknown generator `{lhs}`")))?;
        if seen.insert(g, l.no).is_some() {
            return Err(l.err(format!("second `d {lhs}`")));
        }
        let poly = raw(l, rhs, b, param)?;
        b.add_differential(g, poly);
    }
    let forms: Vec<usize> = b.generators().iter().enumerate().filter(|(_, g)| g.form_degree > 0).map(|(i, _)| i).collect();
    for g in forms {
        if !seen.contains_key(&g) {
            b.add_differential(g, Vec::new());
        }
    }
    Ok(())
}

pub(crate) fn eval_in(line: &Line, src: &str, scope: &Scope) -> Result<crate::cli::expr::Value> {
    let e = at(line, parse(src))?;
    at(line, eval(&e, scope))
}

pub(crate) fn elem_in(line: &Line, src: &str, scope: &Scope) -> Result<Elem> {
    let v = eval_in(line, src, scope)?;
    at(line, v.into_elem(&scope.base))
}

pub(crate) fn tensor_in(line: &Line, src: &str, scope: &Scope, factors: &[Arc<Presentation>]) -> Result<TensorElem> {
    let v = eval_in(line, src, scope)?;
    let t = at(line, v.into_tensor(factors))?;
    let same = t.factors().len() == factors.len() && t.factors().iter().zip(factors).all(|(a, b)| Arc::ptr_eq(a, b));
    if !same {
        return Err(line.err("tensor factors do not match the expected spaces"));
    }
    Ok(t)
}

/// Looks up the generator named on the left of `keyword G = ...`.
pub(crate) fn lhs_gen(line: &Line, pres: &Presentation) -> Result<(usize, String)> {
    let (lhs, rhs) = line.equation()?;
    let g = pres.index_of(lhs).ok_or_else(|| line.err(format!("unknown generator `{lhs}`")))?;
    Ok((g, rhs.to_string()))
}

/// Algebra-morphism letter table, with images of inverse letters filled in.
pub(crate) fn letter_map(
    name: &str,
    domain: &Arc<Presentation>,
    codomain: &[Arc<Presentation>],
    images: BTreeMap<usize, TensorElem>,
) -> Result<BasisRuleMap> {
    let mut table = BTreeMap::new();
    for (g, img) in images {
        if domain.gen(g).invertible {
            table.insert(Monomial::single(g, -1), img.inverse()?);
        }
        table.insert(Monomial::single(g, 1), img);
    }
    Ok(BasisRuleMap::table(name, domain, codomain, ExtensionMode::AlgebraMorphism, table))
}
