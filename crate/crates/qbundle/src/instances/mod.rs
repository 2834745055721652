//! Assembled bundles: the noncommutative 2-torus, the quantum Hopf
//! fibration, Hopf algebras as bundles over the ground field, and smash
//! products. Every instance is an instance file; the shipped ones are
//! compiled in as builtins.

mod build;
pub mod builtin;
mod smash;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::cli::expr::Scope;
use crate::cli::instance_file::{InstanceFile, Kind, Template};
use crate::error::{Error, Result};
use crate::hopf::{ComoduleAlgebra, GaloisExtension, HopfRules, HopfStructure, TranslationSource};
use crate::ncalg::{BasisRuleMap, Elem, ExtensionMode, Monomial, MonomialWindow, Presentation, TensorElem};

use build::{at, elem_in, lhs_gen, letter_map, presentation, tensor_in};
pub use smash::WeightAction;

/// A structure Hopf algebra with its calculus and a basis of `Λ¹`.
#[derive(Clone, Debug)]
pub struct HopfSpace {
    pub name: String,
    pub hopf: Arc<HopfStructure>,
    pub lambda: Vec<Elem>,
}

impl HopfSpace {
    pub fn from_file(file: &InstanceFile) -> Result<Self> {
        if file.kind != Kind::Hopf {
            return Err(Error::Other(format!("`{}` is not a hopf file", file.name)));
        }
        let pres = presentation(file, &file.name)?;
        let scope = Scope::new(&pres);
        let two = [pres.clone(), pres.clone()];
        let mut rules = HopfRules::default();
        for l in file.all("coproduct") {
            let (g, rhs) = lhs_gen(l, &pres)?;
            rules.coproduct.insert(g, tensor_in(l, &rhs, &scope.clone().with_spaces(&two), &two)?);
        }
        for l in file.all("counit") {
            let (g, rhs) = lhs_gen(l, &pres)?;
            let e = elem_in(l, &rhs, &scope)?;
            if e.terms().keys().any(|m| !m.is_one()) {
                return Err(l.err("counit values are scalars"));
            }
            rules.counit.insert(g, e.coeff(&Monomial::one()));
        }
        for l in file.all("antipode") {
            let (g, rhs) = lhs_gen(l, &pres)?;
            rules.antipode.insert(g, elem_in(l, &rhs, &scope)?);
        }
        let hopf = Arc::new(HopfStructure::from_rules(&pres, rules)?);
        let lambda = file.all("lambda").map(|l| elem_in(l, &l.rest, &scope)).collect::<Result<Vec<_>>>()?;
        Ok(HopfSpace { name: file.name.clone(), hopf, lambda })
    }

    pub fn pres(&self) -> &Arc<Presentation> {
        self.hopf.pres()
    }

    /// Name of the grouplike generator `t`.
    pub fn grouplike(&self) -> Result<String> {
        let p = self.pres();
        p.algebra_gens()
            .find(|&g| p.gen(g).invertible)
            .map(|g| p.gen(g).name.clone())
            .ok_or_else(|| Error::Other(format!("`{}` has no grouplike generator", self.name)))
    }

    /// The window `{t^n : |n| ≤ bound}` of `H` (no forms).
    pub fn grouplike_window(&self, bound: u32) -> Result<Vec<Elem>> {
        let t = self.grouplike()?;
        (-(bound as i32)..=bound as i32).map(|n| self.hopf.grouplike(&t, n)).collect()
    }
}

#[derive(Debug)]
pub struct InstanceBundle {
    pub name: String,
    pub kind: Kind,
    pub structure: HopfSpace,
    pub galois: Arc<GaloisExtension>,
    /// Named elements such as the Podleś generators.
    pub names: BTreeMap<String, Elem>,
    /// `e_k = Σ x d(y)` for basis forms that are not differentials of generators.
    pub witnesses: BTreeMap<usize, Vec<(Elem, Elem)>>,
    pub window: MonomialWindow,
    pub connections: Vec<Template>,
    pub gauges: Vec<Template>,
    pub action: Option<WeightAction>,
    pub file: InstanceFile,
}

impl InstanceBundle {
    pub fn total(&self) -> &Arc<Presentation> {
        self.galois.total()
    }

    pub fn hopf(&self) -> &Arc<HopfStructure> {
        &self.structure.hopf
    }

    pub fn structure_pres(&self) -> &Arc<Presentation> {
        self.structure.pres()
    }

    pub fn comodule(&self) -> &ComoduleAlgebra {
        self.galois.comodule()
    }

    pub fn calculus(&self) -> Result<crate::qpb::BundleCalculus> {
        crate::qpb::BundleCalculus::new(self.galois.clone(), self.structure.lambda.clone())
    }

    /// Scope for expressions over `A` (with named elements) and `H`.
    pub fn scope(&self) -> Scope {
        Scope::new(self.total())
            .with_names(&self.names)
            .with_spaces(&[self.total().clone(), self.structure_pres().clone()])
    }

    pub fn eval(&self, src: &str) -> Result<Elem> {
        let v = crate::cli::expr::eval(&crate::cli::expr::parse(src)?, &self.scope())?;
        v.into_elem(self.total())
    }

    pub fn eval_structure(&self, src: &str) -> Result<Elem> {
        crate::cli::expr::eval_elem(src, self.structure_pres())
    }

    pub fn connection_template(&self, name: &str) -> Result<&Template> {
        self.connections
            .iter()
            .find(|t| t.name == name)
            .ok_or_else(|| Error::UnknownSymbol(format!("connection `{name}`")))
    }

    pub fn gauge_template(&self, name: &str) -> Result<&Template> {
        self.gauges.iter().find(|t| t.name == name).ok_or_else(|| Error::UnknownSymbol(format!("gauge `{name}`")))
    }
}

/// Loads a builtin instance by name, or an instance file by path.
pub fn load(source: &str) -> Result<InstanceBundle> {
    if let Some(text) = builtin::text(source) {
        return from_text(text, None);
    }
    let path = Path::new(source);
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Other(format!("cannot read instance `{source}`: {e}")))?;
    from_text(&text, path.parent())
}

pub fn from_text(text: &str, base_dir: Option<&Path>) -> Result<InstanceBundle> {
    from_file(&InstanceFile::parse(text)?, base_dir)
}

pub fn load_hopf(reference: &str, base_dir: Option<&Path>) -> Result<HopfSpace> {
    let text = match builtin::text(reference) {
        Some(t) => t.to_string(),
        None => {
            let p: PathBuf = base_dir.map(|d| d.join(reference)).unwrap_or_else(|| reference.into());
            std::fs::read_to_string(&p).map_err(|e| Error::Other(format!("cannot read `{}`: {e}", p.display())))?
        }
    };
    HopfSpace::from_file(&InstanceFile::parse(&text)?)
}

pub fn from_file(file: &InstanceFile, base_dir: Option<&Path>) -> Result<InstanceBundle> {
    match file.kind {
        Kind::Hopf => Ok(hopf_as_bundle(&HopfSpace::from_file(file)?, file.clone())),
        Kind::Bundle | Kind::Smash => assemble(file, base_dir),
    }
}

/// `k ⊆ H` with `Δ_A = Δ` and `τ(h) = S(h₁)⊗h₂`.
pub fn hopf_as_bundle(space: &HopfSpace, file: InstanceFile) -> InstanceBundle {
    let h = space.pres().clone();
    let comodule = ComoduleAlgebra::new(&h, &space.hopf, space.hopf.coproduct_map().clone())
        .expect("coproduct is a coaction");
    let id = BasisRuleMap::generated("cleaving", &h, &[h.clone()], ExtensionMode::Linear, {
        let h = h.clone();
        move |m: &Monomial| Ok(Some(TensorElem::from_elem(&Elem::monomial(&h, m.clone()))))
    });
    InstanceBundle {
        name: file.name.clone(),
        kind: file.kind,
        structure: space.clone(),
        galois: Arc::new(GaloisExtension::new(comodule, TranslationSource::Cleaving(id))),
        names: BTreeMap::new(),
        witnesses: BTreeMap::new(),
        window: MonomialWindow::new(3).with_forms(h.cap()),
        connections: Vec::new(),
        gauges: Vec::new(),
        action: None,
        file,
    }
}

fn assemble(file: &InstanceFile, base_dir: Option<&Path>) -> Result<InstanceBundle> {
    let sref = file.one("structure")?.ok_or_else(|| Error::InstanceFile { line: 1, msg: "missing `structure`".into() })?;
    let structure = at(sref, load_hopf(sref.rest.trim(), base_dir))?;

    if let Some(l) = file.one("total")? {
        if l.rest.trim() != "structure" {
            return Err(l.err("only `total structure` is supported"));
        }
        let mut b = hopf_as_bundle(&structure, file.clone());
        apply_common(&mut b, file)?;
        return Ok(b);
    }

    let (total, coaction, source, action) = match file.kind {
        Kind::Smash => {
            let parts = smash::assemble(file, &structure.hopf, &file.name)?;
            (parts.total, parts.coaction, TranslationSource::Cleaving(parts.inclusion), Some(parts.action))
        }
        _ => {
            let total = presentation(file, &file.name)?;
            let coaction = coaction_map(file, &total, &structure)?;
            let source = translation_source(file, &total, &structure)?;
            (total, coaction, source, None)
        }
    };
    let comodule = ComoduleAlgebra::new(&total, &structure.hopf, coaction)?;
    let mut b = InstanceBundle {
        name: file.name.clone(),
        kind: file.kind,
        structure,
        galois: Arc::new(GaloisExtension::new(comodule, source)),
        names: BTreeMap::new(),
        witnesses: BTreeMap::new(),
        window: MonomialWindow::new(2).with_forms(total.cap()),
        connections: Vec::new(),
        gauges: Vec::new(),
        action,
        file: file.clone(),
    };
    apply_common(&mut b, file)?;
    Ok(b)
}

fn apply_common(b: &mut InstanceBundle, file: &InstanceFile) -> Result<()> {
    let total = b.total().clone();
    for l in file.all("let") {
        let (name, rhs) = l.equation()?;
        let e = elem_in(l, rhs, &b.scope())?;
        b.names.insert(name.to_string(), e);
    }
    let aa = [total.clone(), total.clone()];
    for l in file.all("witness") {
        let (k, rhs) = lhs_gen(l, &total)?;
        let t = tensor_in(l, &rhs, &b.scope().with_spaces(&aa), &aa)?;
        let pairs = t
            .terms()
            .iter()
            .map(|(key, c)| {
                (Elem::monomial(&total, key[0].clone()).scale(c), Elem::monomial(&total, key[1].clone()))
            })
            .collect();
        b.witnesses.insert(k, pairs);
    }
    if let Some(l) = file.one("window")? {
        b.window.bound = l.int()? as u32;
    }
    if let Some(l) = file.one("window-forms")? {
        b.window.max_form_degree = l.int()? as u32;
    }
    for l in file.all("connection") {
        b.connections.push(Template::parse(l)?);
    }
    for l in file.all("gauge") {
        b.gauges.push(Template::parse(l)?);
    }
    Ok(())
}

/// `coact` lines; algebra generators default to `g ↦ g⊗t^{|g|}` and a basis
/// form `d(g)` defaults to `d⊗Δ_A(g)`.
fn coaction_map(file: &InstanceFile, total: &Arc<Presentation>, space: &HopfSpace) -> Result<BasisRuleMap> {
    let h = space.pres();
    let ah = [total.clone(), h.clone()];
    let scope = Scope::new(total).with_spaces(&ah);
    let mut images = BTreeMap::new();
    for l in file.all("coact") {
        let (g, rhs) = lhs_gen(l, total)?;
        images.insert(g, tensor_in(l, &rhs, &scope, &ah)?);
    }
    let t = space.grouplike()?;
    for g in total.algebra_gens() {
        if !images.contains_key(&g) {
            let x = Elem::monomial(total, Monomial::single(g, 1));
            images.insert(g, TensorElem::pure(&[&x, &space.hopf.grouplike(&t, total.gen(g).weight)?]));
        }
    }
    for f in total.form_gens() {
        if images.contains_key(&f) {
            continue;
        }
        let target = Elem::monomial(total, Monomial::single(f, 1));
        let src = total
            .algebra_gens()
            .find(|&g| Elem::monomial(total, Monomial::single(g, 1)).d().is_ok_and(|d| d == target))
            .ok_or_else(|| Error::Other(format!("no coaction given for `{}`", total.gen(f).name)))?;
        images.insert(f, images[&src].differential()?);
    }
    letter_map("coaction", total, &ah, images)
}

/// `cleave` lines give an algebra-morphism cleaving map (forms default to
/// `j(dh) = d j(h)`); `translation solve` selects the window solver.
fn translation_source(file: &InstanceFile, total: &Arc<Presentation>, space: &HopfSpace) -> Result<TranslationSource> {
    if let Some(l) = file.one("translation")? {
        return match l.rest.trim() {
            "solve" => Ok(TranslationSource::Solve),
            other => Err(l.err(format!("unknown translation mode `{other}`"))),
        };
    }
    let h = space.pres();
    let scope = Scope::new(total);
    let mut images = BTreeMap::new();
    for l in file.all("cleave") {
        let (g, rhs) = lhs_gen(l, h)?;
        images.insert(g, TensorElem::from_elem(&elem_in(l, &rhs, &scope)?));
    }
    if images.is_empty() {
        return Ok(TranslationSource::Solve);
    }
    for f in h.form_gens() {
        if images.contains_key(&f) {
            continue;
        }
        let target = Elem::monomial(h, Monomial::single(f, 1));
        let src = h
            .algebra_gens()
            .find(|&g| Elem::monomial(h, Monomial::single(g, 1)).d().is_ok_and(|d| d == target))
            .ok_or_else(|| Error::Other(format!("no cleaving given for `{}`", h.gen(f).name)))?;
        let d = images[&src].to_elem()?.d()?;
        images.insert(f, TensorElem::from_elem(&d));
    }
    Ok(TranslationSource::Cleaving(letter_map("cleaving", h, &[total.clone()], images)?))
}

/// Names of the builtin instances.
pub fn list() -> Vec<&'static str> {
    builtin::NAMES.to_vec()
}

pub fn torus_bundle() -> Result<InstanceBundle> {
    load("torus")
}

pub fn quantum_hopf_fibration() -> Result<InstanceBundle> {
    load("su_q2")
}

pub fn smash_bundle() -> Result<InstanceBundle> {
    load("smash_w")
}

pub fn hopf_u1_bundle() -> Result<InstanceBundle> {
    load("hopf_u1")
}

fn render_poly(pres: &Presentation, poly: &[(crate::ncalg::Word, crate::ncalg::Scalar)]) -> String {
    if poly.is_empty() {
        return "0".into();
    }
    poly.iter()
        .map(|(w, c)| format!("({})*{}", c.render(pres.param()), pres.render_word(w)))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// The `begin prolongation` block for a first-order bundle file: wedge
/// relations, `d` of the basis forms (normalized under those relations), and `cap 3`.
pub fn prolongation_block(bundle: &InstanceBundle) -> Result<String> {
    let pres = bundle.total();
    let p = crate::dga::prolong_relations(pres, &bundle.witnesses)?;
    let mut lines = Vec::new();
    for (k, l, rhs) in &p.relations {
        lines.push(format!("rel {}*{} = {}", pres.gen(*k).name, pres.gen(*l).name, render_poly(pres, rhs)));
    }
    lines.push("cap 3".to_string());
    let mut staged = bundle.file.clone();
    let no = staged.lines.last().map_or(1, |l| l.no);
    for (i, text) in lines.iter().enumerate() {
        let (keyword, rest) = text.split_once(' ').expect("keyword");
        staged.lines.push(crate::cli::instance_file::Line {
            no: no + 1 + i,
            keyword: keyword.into(),
            rest: rest.into(),
            prolonged: true,
        });
    }
    let wedge = from_file(&staged, None)?;
    let total = wedge.total();
    let cap = lines.pop().expect("cap line");
    for (k, dk) in &p.differentials {
        let mut e = Elem::zero(total);
        for (w, c) in dk {
            e = &e + &Elem::word(total, w)?.scale(c);
        }
        lines.push(format!("d {} = {}", pres.gen(*k).name, e.render()));
    }
    lines.push(cap);
    Ok(format!("begin prolongation\n{}\nend prolongation\n", lines.join("\n")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_load() {
        for name in list() {
            let b = load(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(b.name, name);
        }
    }

    #[test]
    fn frozen_prolongation_matches_regeneration() {
        let b = quantum_hopf_fibration().unwrap();
        let first = from_file(&b.file.first_order(), None).unwrap();
        let block = prolongation_block(&first).unwrap();
        let regenerated = InstanceFile::parse(&format!("bundle check\n{block}")).unwrap();
        let key = |l: &crate::cli::instance_file::Line| (l.keyword.clone(), l.rest.clone());
        let frozen: Vec<_> = b.file.lines.iter().filter(|l| l.prolonged).map(key).collect();
        let fresh: Vec<_> = regenerated.lines.iter().map(key).collect();
        assert_eq!(frozen, fresh, "regenerate with:\n{block}");
        assert_eq!(b.total().cap(), 3);
        assert_eq!(first.total().cap(), 1);
    }

    fn assert_all(outcomes: Vec<crate::check::CheckOutcome>) {
        for o in &outcomes {
            assert!(o.ok(), "{} failed: {:?}", o.check, o.witness);
        }
    }

    #[test]
    fn shipped_calculi_are_dgas() {
        for name in list() {
            let b = load(name).unwrap();
            let w = MonomialWindow::new(1).with_forms(b.total().cap().min(2));
            assert_all(crate::dga::dga_axiom_check(b.total(), &w).unwrap());
            assert_all(b.hopf().axiom_check(&MonomialWindow::new(2).with_forms(1)).unwrap());
            assert_all(b.comodule().axiom_check(&w).unwrap());
        }
    }

    #[test]
    fn podles_relations() {
        let b = quantum_hopf_fibration().unwrap();
        let lhs = b.eval("Bm*B0").unwrap();
        assert_eq!(lhs, b.eval("q^2*B0*Bm").unwrap());
        assert_eq!(b.eval("Bm*Bp").unwrap(), b.eval("q^2*B0*(1 - q^2*B0)").unwrap());
        assert_eq!(b.eval("Bp*Bm").unwrap(), b.eval("B0*(1 - B0)").unwrap());
        for n in ["Bp", "Bm", "B0"] {
            assert!(b.comodule().is_coinvariant(&b.names[n]).unwrap(), "{n}");
        }
    }

    #[test]
    fn suq2_witnesses_reproduce_basis_forms() {
        let b = quantum_hopf_fibration().unwrap();
        for (k, pairs) in &b.witnesses {
            let mut e = Elem::zero(b.total());
            for (x, y) in pairs {
                e = &e + &x.mul(&y.d().unwrap()).unwrap();
            }
            assert_eq!(e, Elem::monomial(b.total(), Monomial::single(*k, 1)));
        }
        assert_eq!(b.eval("delta*alpha").unwrap().render(), "1 + q*beta*gamma");
    }

    #[test]
    fn smash_action_is_module_calculus() {
        let b = smash_bundle().unwrap();
        let act = b.action.as_ref().unwrap();
        assert_all(act.check(&MonomialWindow::new(2).with_forms(1)).unwrap());
        assert_eq!(b.eval("t*w").unwrap(), b.eval("q^2*w*t").unwrap());
    }

    #[test]
    fn bad_files_report_lines() {
        let e = from_text("bundle x\nstructure u1\ngen u invertible weight 1\nrel u*w = 0\n", None).unwrap_err();
        assert!(matches!(e, Error::InstanceFile { line: 4, .. }), "{e:?}");
        let e = from_text("bundle x\nstructure nowhere\n", None).unwrap_err();
        assert!(matches!(e, Error::InstanceFile { line: 2, .. }), "{e:?}");
    }
}
