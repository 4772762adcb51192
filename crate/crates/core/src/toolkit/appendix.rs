//! Codiagonal identities checked by explicit colimit computation, plus the
//! unique-lift equivalence and 2-out-of-3 on sampled morphisms.

use serde::Serialize;

use super::{
    arrows_isomorphic, codiagonal, induced, pushout, rlp, sum_of_arrows, unique_rlp, Carrier,
    Generator, GeneratorSet, Morphism,
};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityKind {
    /// `⊔ ∇_{i_α} ≅ ∇_{⊔ i_α}`
    Sum,
    /// the codiagonal square of a pushout is cocartesian
    Pushout,
    /// `∇_{i_2∘i_1}` factors through `c ⊔_b c`, with a cocartesian square
    Composition,
    /// the codiagonal of a retract is a retract of the codiagonal
    Retract,
    /// `∇_{∇_f}` is an isomorphism
    NablaNabla,
    /// unique RLP against `i` iff RLP against `i` and `∇_i`
    UniqueLift,
    /// two of `f`, `g`, `f∘g` trivial fibrations imply the third
    TwoOfThree,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub kind: IdentityKind,
    pub subject: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AppendixReport {
    pub checks: Vec<IdentityCheck>,
}

impl AppendixReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn count(&self, kind: IdentityKind) -> usize {
        self.checks.iter().filter(|c| c.kind == kind).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }

    fn push(&mut self, kind: IdentityKind, subject: String, outcome: Result<bool>) {
        let (holds, detail) = match outcome {
            Ok(h) => (h, None),
            Err(e) => (false, Some(e.to_string())),
        };
        self.checks.push(IdentityCheck {
            kind,
            subject,
            holds,
            detail,
        });
    }
}

/// Sampled configurations for [`appendix_identity_suite`].
pub struct AppendixSample<'a, C> {
    /// Monomorphisms; every pair is summed, each one is checked for
    /// `∇_{∇_f}` and used as a retract.
    pub arrows: Vec<Generator<C>>,
    /// `(i_1: a_1 → b_1, f: a_1 → a_2)`.
    pub pushouts: Vec<(Generator<C>, Morphism<C>)>,
    /// Composable `(i_1: a → b, i_2: b → c)`.
    pub compositions: Vec<(Morphism<C>, Morphism<C>)>,
    /// `(p, i)` for the unique-lift equivalence.
    pub lifting: Vec<(Morphism<C>, Generator<C>)>,
    /// Composable `(g, f)`; membership in `I^⧄` is decided by `unique_rlp`
    /// against `generators(map)`.
    pub two_of_three: Vec<(Morphism<C>, Morphism<C>)>,
    #[allow(clippy::type_complexity)]
    pub generators: &'a dyn Fn(&Morphism<C>) -> Result<GeneratorSet<C>>,
}

pub fn appendix_identity_suite<C: Carrier>(sample: &AppendixSample<'_, C>) -> AppendixReport {
    let mut report = AppendixReport::default();
    for (k, f1) in sample.arrows.iter().enumerate() {
        for f2 in &sample.arrows[k..] {
            report.push(
                IdentityKind::Sum,
                format!("{} ⊔ {}", f1.name, f2.name),
                sum_identity(&f1.arrow, &f2.arrow),
            );
        }
    }
    for f in &sample.arrows {
        report.push(
            IdentityKind::NablaNabla,
            f.name.clone(),
            nabla_nabla(&f.arrow),
        );
        report.push(
            IdentityKind::Retract,
            f.name.clone(),
            retract_identity(&f.arrow),
        );
    }
    for (i, f) in &sample.pushouts {
        report.push(
            IdentityKind::Pushout,
            format!("{} along {f:?}", i.name),
            pushout_identity(&i.arrow, f),
        );
    }
    for (i1, i2) in &sample.compositions {
        report.push(
            IdentityKind::Composition,
            format!("{i2:?} ∘ {i1:?}"),
            composition_identity(i1, i2),
        );
    }
    for (p, i) in &sample.lifting {
        report.push(
            IdentityKind::UniqueLift,
            format!("{p:?} against {}", i.name),
            unique_lift_equivalence(p, i),
        );
    }
    for (g, f) in &sample.two_of_three {
        report.push(
            IdentityKind::TwoOfThree,
            format!("{f:?} ∘ {g:?}"),
            two_of_three(g, f, sample.generators),
        );
    }
    report
}

fn sum_identity<C: Carrier>(f1: &Morphism<C>, f2: &Morphism<C>) -> Result<bool> {
    let of_sum = codiagonal(&sum_of_arrows(f1, f2)?)?;
    let sum_of = sum_of_arrows(&codiagonal(f1)?, &codiagonal(f2)?)?;
    Ok(arrows_isomorphic(&of_sum, &sum_of))
}

fn nabla_nabla<C: Carrier>(f: &Morphism<C>) -> Result<bool> {
    Ok(codiagonal(&codiagonal(f)?)?.is_iso())
}

/// `(g_*, g): b_1 ⊔_{a_1} b_1 → b_2 ⊔_{a_2} b_2`, then the pushout of
/// `∇_{i_1}` along it must be `b_2` through `(g, ∇_{i_2})`.
fn pushout_identity<C: Carrier>(i1: &Morphism<C>, f: &Morphism<C>) -> Result<bool> {
    let po = pushout(i1, f)?;
    let (g, i2) = (&po.left, &po.right);
    let p1 = pushout(i1, i1)?;
    let p2 = pushout(i2, i2)?;
    let gg = induced(
        &[&p1.left, &p1.right],
        &[&g.then(&p2.left)?, &g.then(&p2.right)?],
    )?;
    let nabla1 = induced(
        &[&p1.left, &p1.right],
        &[&Morphism::identity(i1.target().clone()); 2],
    )?;
    let nabla2 = induced(
        &[&p2.left, &p2.right],
        &[&Morphism::identity(i2.target().clone()); 2],
    )?;
    let q = pushout(&nabla1, &gg)?;
    let comparison = induced(&[&q.left, &q.right], &[g, &nabla2])?;
    Ok(comparison.is_iso())
}

fn composition_identity<C: Carrier>(i1: &Morphism<C>, i2: &Morphism<C>) -> Result<bool> {
    let i = i1.then(i2)?;
    let nabla = codiagonal(&i)?;
    let nabla2 = codiagonal(i2)?;
    let pca = pushout(&i, &i)?;
    let pcb = pushout(i2, i2)?;
    let pba = pushout(i1, i1)?;
    let m = induced(&[&pca.left, &pca.right], &[&pcb.left, &pcb.right])?;
    let factors = m.then(&nabla2)?.map() == nabla.map();

    let k = induced(
        &[&pba.left, &pba.right],
        &[&i2.then(&pca.left)?, &i2.then(&pca.right)?],
    )?;
    let nabla1 = induced(
        &[&pba.left, &pba.right],
        &[&Morphism::identity(i1.target().clone()); 2],
    )?;
    let q = pushout(&nabla1, &k)?;
    let comparison = induced(&[&q.left, &q.right], &[&i2.then(&pcb.left)?, &m])?;
    Ok(factors && comparison.is_iso())
}

/// `f` is a retract of `f ⊔ f` (left injections, fold maps); the induced maps
/// between codiagonals must exhibit `∇_f` as a retract of `∇_{f⊔f}`.
fn retract_identity<C: Carrier>(f: &Morphism<C>) -> Result<bool> {
    let big = sum_of_arrows(f, f)?;
    let tgt = super::coproduct(f.target(), f.target());
    let id_t = Morphism::identity(f.target().clone());
    let fold_t = induced(&[&tgt.left, &tgt.right], &[&id_t, &id_t])?;
    let s_t = tgt.left.clone();

    let small = pushout(f, f)?;
    let large = pushout(&big, &big)?;
    let nabla_small = induced(&[&small.left, &small.right], &[&id_t, &id_t])?;
    let id_big = Morphism::identity(big.target().clone());
    let nabla_large = induced(&[&large.left, &large.right], &[&id_big, &id_big])?;

    let s_tilde = induced(
        &[&small.left, &small.right],
        &[&s_t.then(&large.left)?, &s_t.then(&large.right)?],
    )?;
    let r_tilde = induced(
        &[&large.left, &large.right],
        &[&fold_t.then(&small.left)?, &fold_t.then(&small.right)?],
    )?;
    let retracts = s_tilde.then(&r_tilde)?.map() == Morphism::identity(small.object.clone()).map()
        && s_t.then(&fold_t)?.map() == id_t.map();
    let commutes_s = s_tilde.then(&nabla_large)?.map() == nabla_small.then(&s_t)?.map();
    let commutes_r = r_tilde.then(&nabla_small)?.map() == nabla_large.then(&fold_t)?.map();
    Ok(retracts && commutes_s && commutes_r)
}

fn unique_lift_equivalence<C: Carrier>(p: &Morphism<C>, i: &Generator<C>) -> Result<bool> {
    let set = GeneratorSet::new(vec![i.clone()])?;
    let unique = unique_rlp(p, &set).holds;
    let plain = rlp(p, &[i.clone(), set.closure[0].clone()]).holds;
    Ok(unique == plain)
}

fn two_of_three<C: Carrier>(
    g: &Morphism<C>,
    f: &Morphism<C>,
    generators: &dyn Fn(&Morphism<C>) -> Result<GeneratorSet<C>>,
) -> Result<bool> {
    let fg = g.then(f)?;
    let member = |m: &Morphism<C>| -> Result<bool> { Ok(unique_rlp(m, &generators(m)?).holds) };
    let (u_fg, u_f, u_g) = (member(&fg)?, member(f)?, member(g)?);
    let right_cancel = !(u_fg && u_f) || u_g;
    let left_cancel = !(u_fg && u_g) || u_f;
    let compose = !(u_f && u_g) || u_fg;
    Ok(right_cancel && left_cancel && compose)
}
