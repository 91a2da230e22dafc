//! Built-in example presentations and the config-file description they share
//! with user-supplied setups.
//!
//! Scalars are written as strings accepted by `GaussRational::from_str`
//! (`"1/2"`, `"-i"`, `"3+2i"`); words are space-separated generator names,
//! multiplied left to right, with `""` standing for the unit.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hopf::{check_cocycle, Bialgebra, Twist};
use crate::modalg::{GenAction, ModuleAlgebra, RepData};
use crate::ncpoly::{Gen, NCPoly, NamedBracket, RewriteSystem, Sort};
use crate::residual::CheckEntry;
use crate::scalars::{GaussRational, TruncSeries};

pub const PRESET_NAMES: [&str; 5] = ["trivial", "heisenberg", "igl2-abelian", "igl4-abelian", "pw-jordanian"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    /// `symmetry` or `momentum`.
    pub sort: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketSpec {
    pub left: String,
    pub right: String,
    /// Generator name to coefficient.
    #[serde(default)]
    pub result: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub central: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum ActionSpec {
    /// `ρ(L)` as rows; the generator acts as `−Σ ρ(L)^β_α x^α ∂_β`.
    Matrix(Vec<Vec<String>>),
    /// `∂/∂x` for the named coordinate.
    Derivative(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum TwistTerm {
    /// `coeff · h^h_power · left ⊗ right`
    Monomial { coeff: String, h_power: usize, left: String, right: String },
    /// `coeff · left ⊗ log(1 + scale·h·right)`, expanded to the working order.
    Log { coeff: String, left: String, right: String, scale: String },
}

/// A Lie algebra, its affine action on coordinates and a twist exponent
/// `t` with `F = exp(t)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresetSpec {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub brackets: Vec<BracketSpec>,
    pub coordinates: Vec<String>,
    pub actions: BTreeMap<String, ActionSpec>,
    #[serde(default)]
    pub twist: Vec<TwistTerm>,
    /// Recommended truncation order.
    pub order: usize,
    /// Recommended sample degree.
    pub degree: usize,
    /// Check suites run by `twistoid run`, by command name.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<String>,
}

/// A built preset: the module algebra and the twist at a chosen order.
pub struct Setup {
    pub spec: PresetSpec,
    pub ma: ModuleAlgebra,
    pub twist: Twist,
}

fn scalar(s: &str) -> Result<GaussRational> {
    s.parse().map_err(|_| Error::Parse(format!("bad scalar `{s}`")))
}

fn sort_of(s: &str) -> Result<Sort> {
    match s {
        "symmetry" => Ok(Sort::Symmetry),
        "momentum" => Ok(Sort::Momentum),
        _ => Err(Error::Parse(format!("unknown sort `{s}`; expected symmetry or momentum"))),
    }
}

/// The ordered product of the generators named in `word`, on one leg.
fn word_poly(rs: &RewriteSystem, word: &str, order: usize) -> Result<NCPoly> {
    let mut p = NCPoly::one(order);
    for name in word.split_whitespace() {
        p = p.mul(&NCPoly::generator(Gen::new(0, rs.index(name)?), order), rs)?;
    }
    Ok(p)
}

impl PresetSpec {
    pub fn rewrite_system(&self) -> Result<RewriteSystem> {
        let gens = self.generators.iter().map(|g| Ok((g.name.clone(), sort_of(&g.sort)?))).collect::<Result<Vec<_>>>()?;
        let brackets = self
            .brackets
            .iter()
            .map(|b| {
                let lin = b.result.iter().map(|(g, c)| Ok((g.clone(), scalar(c)?))).collect::<Result<Vec<_>>>()?;
                let central = b.central.as_deref().map(scalar).transpose()?.unwrap_or_else(GaussRational::zero);
                Ok((b.left.clone(), b.right.clone(), lin, central))
            })
            .collect::<Result<Vec<NamedBracket>>>()?;
        RewriteSystem::new(gens, &brackets)
    }

    fn actions(&self, rs: &RewriteSystem) -> Result<Vec<GenAction>> {
        for name in self.actions.keys() {
            rs.index(name)?;
        }
        (0..rs.len() as u8)
            .map(|k| {
                let name = rs.name(k);
                match self.actions.get(name) {
                    None => Err(Error::InvalidRepresentation(format!("no action given for `{name}`"))),
                    Some(ActionSpec::Derivative(x)) => self
                        .coordinates
                        .iter()
                        .position(|c| c == x)
                        .map(GenAction::Derivative)
                        .ok_or_else(|| Error::InvalidRepresentation(format!("unknown coordinate `{x}`"))),
                    Some(ActionSpec::Matrix(rows)) => Ok(GenAction::Matrix(
                        rows.iter().map(|r| r.iter().map(|c| scalar(c)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?,
                    )),
                }
            })
            .collect()
    }

    /// The two-leg twist exponent at truncation order `order`.
    pub fn exponent(&self, rs: &RewriteSystem, order: usize) -> Result<NCPoly> {
        let mut t = NCPoly::zero(order);
        for term in &self.twist {
            let (coeff, left, rights) = match term {
                TwistTerm::Monomial { coeff, h_power, left, right } => {
                    let c = TruncSeries::monomial(scalar(coeff)?, *h_power, order);
                    (c, left, vec![word_poly(rs, right, order)?])
                }
                TwistTerm::Log { coeff, left, right, scale } => {
                    // log(1 + y) = Σ (−1)^{k+1} y^k / k with y = scale·h·right
                    let y = word_poly(rs, right, order)?.scale(&TruncSeries::monomial(scalar(scale)?, 1, order));
                    let mut pow = NCPoly::one(order);
                    let mut series = NCPoly::zero(order);
                    for k in 1..=order {
                        pow = pow.mul(&y, rs)?;
                        let sign = if k % 2 == 1 { 1 } else { -1 };
                        series.add_assign(&pow.scale_scalar(&GaussRational::from_frac(sign, k as i64)));
                    }
                    (TruncSeries::constant(scalar(coeff)?, order), left, vec![series])
                }
            };
            let l = word_poly(rs, left, order)?.leg_embed(1, 2)?;
            for r in rights {
                t.add_assign(&l.mul(&r.leg_embed(2, 2)?, rs)?.scale(&coeff));
            }
        }
        Ok(t)
    }

    /// Builds the module algebra and twist at `order`; Jacobi and the
    /// representation property are checked on the way.
    pub fn build(&self, order: usize) -> Result<Setup> {
        let wrap = |e: Error| Error::InvalidPreset { name: self.name.clone(), reason: e.to_string() };
        let rs = self.rewrite_system().map_err(wrap)?;
        let b = Bialgebra::new(Arc::new(rs), order).map_err(wrap)?;
        let actions = self.actions(b.rs()).map_err(wrap)?;
        let rep = RepData::new(&b, self.coordinates.clone(), actions).map_err(wrap)?;
        let t = self.exponent(b.rs(), order).map_err(wrap)?;
        let twist = if t.is_zero() { Twist::trivial(&b) } else { Twist::from_exponent(&b, &t).map_err(wrap)? };
        Ok(Setup { spec: self.clone(), ma: ModuleAlgebra::new(b, rep), twist })
    }

    /// Builds at `order` and checks the cocycle and normalization conditions.
    pub fn validate(&self, order: usize) -> Result<Setup> {
        let setup = self.build(order)?;
        let rep = check_cocycle(&setup.ma.bialg, &setup.twist);
        let entries = rep.entries(setup.ma.bialg.rs());
        if let Some(bad) = entries.iter().find(|e| !e.passed()) {
            return Err(Error::InvalidPreset {
                name: self.name.clone(),
                reason: format!("{} fails: {}", bad.name, bad.witness.clone().unwrap_or_default()),
            });
        }
        Ok(setup)
    }

    /// Validation results as report entries rather than an error.
    pub fn validation_entries(&self, order: usize) -> Vec<CheckEntry> {
        let failed = |name: &str, tag: &str, why: String| CheckEntry {
            name: name.into(),
            tag: tag.into(),
            status: crate::Status::Fail,
            samples: 1,
            residual_terms: 0,
            failing_order: None,
            witness: Some(why),
        };
        let pass = |name: &str, tag: &str| CheckEntry {
            name: name.into(),
            tag: tag.into(),
            status: crate::Status::Pass,
            samples: 1,
            residual_terms: 0,
            failing_order: None,
            witness: None,
        };
        let mut out = Vec::new();
        match self.rewrite_system() {
            Ok(_) => out.push(pass("Jacobi identity", "jacobi")),
            Err(e) => {
                out.push(failed("Jacobi identity", "jacobi", e.to_string()));
                return out;
            }
        }
        match self.build(order) {
            Ok(setup) => {
                out.push(pass("representation property", "x1"));
                out.extend(check_cocycle(&setup.ma.bialg, &setup.twist).entries(setup.ma.bialg.rs()));
            }
            Err(e) => out.push(failed("representation property", "x1", e.to_string())),
        }
        out
    }
}

fn gen(name: &str, sort: &str) -> GeneratorSpec {
    GeneratorSpec { name: name.into(), sort: sort.into() }
}

fn bracket(left: &str, right: &str, result: &[(&str, &str)]) -> BracketSpec {
    BracketSpec {
        left: left.into(),
        right: right.into(),
        result: result.iter().map(|(g, c)| (g.to_string(), c.to_string())).collect(),
        central: None,
    }
}

fn unit_matrix(n: usize, entries: &[(usize, usize, &str)]) -> ActionSpec {
    let mut m = vec![vec!["0".to_string(); n]; n];
    for &(r, c, v) in entries {
        m[r][c] = v.into();
    }
    ActionSpec::Matrix(m)
}

fn momenta(n: usize) -> (Vec<GeneratorSpec>, Vec<String>, BTreeMap<String, ActionSpec>) {
    let gens = (0..n).map(|k| gen(&format!("P{k}"), "momentum")).collect();
    let coords: Vec<String> = (0..n).map(|k| format!("x{k}")).collect();
    let actions = (0..n).map(|k| (format!("P{k}"), ActionSpec::Derivative(format!("x{k}")))).collect();
    (gens, coords, actions)
}

/// `igl(n)`: `L^μ_ν` (named `Lμν`) with `ρ(L^μ_ν) = e_{μν}`, plus momenta.
fn igl(n: usize) -> PresetSpec {
    let (mut gens, coords, mut actions) = momenta(n);
    let name = |a: usize, b: usize| format!("L{a}{b}");
    let mut brackets = Vec::new();
    for a in 0..n {
        for b in 0..n {
            gens.push(gen(&name(a, b), "symmetry"));
            actions.insert(name(a, b), unit_matrix(n, &[(a, b, "1")]));
            // [L^a_b, P_b] = P_a
            brackets.push(bracket(&name(a, b), &format!("P{b}"), &[(&format!("P{a}"), "1")]));
        }
    }
    // [L^a_b, L^c_d] = δ^c_b L^a_d − δ^a_d L^c_b, listed once per unordered pair
    let labels: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    for (i, &(a, b)) in labels.iter().enumerate() {
        for &(c, d) in &labels[i + 1..] {
            let mut res: BTreeMap<String, i64> = BTreeMap::new();
            if b == c {
                *res.entry(name(a, d)).or_default() += 1;
            }
            if a == d {
                *res.entry(name(c, b)).or_default() -= 1;
            }
            res.retain(|_, v| *v != 0);
            if !res.is_empty() {
                let owned: Vec<(String, String)> = res.into_iter().map(|(g, v)| (g, v.to_string())).collect();
                let refs: Vec<(&str, &str)> = owned.iter().map(|(g, v)| (g.as_str(), v.as_str())).collect();
                brackets.push(bracket(&name(a, b), &name(c, d), &refs));
            }
        }
    }
    // spatial trace L = Σ_k L^k_k; t = i·h·P₀⊗L
    let twist = (1..n)
        .map(|k| TwistTerm::Monomial { coeff: "i".into(), h_power: 1, left: "P0".into(), right: name(k, k) })
        .collect();
    PresetSpec {
        name: format!("igl{n}-abelian"),
        description: format!(
            "igl({n}) acting on {n} coordinates; abelian twist exp(i h P0 ⊗ L) with L the spatial trace, giving [x0, xk] = i h xk"
        ),
        generators: gens,
        brackets,
        coordinates: coords,
        actions,
        twist,
        order: if n == 2 { 4 } else { 2 },
        degree: if n == 2 { 2 } else { 1 },
        checks: Vec::new(),
    }
}

fn heisenberg() -> PresetSpec {
    let (gens, coordinates, actions) = momenta(2);
    PresetSpec {
        name: "heisenberg".into(),
        description: "translations of the plane; Moyal twist exp(−(i h/2)(P0⊗P1 − P1⊗P0)) giving [x0, x1] = i h".into(),
        generators: gens,
        brackets: Vec::new(),
        coordinates,
        actions,
        twist: vec![
            TwistTerm::Monomial { coeff: "-1/2i".into(), h_power: 1, left: "P0".into(), right: "P1".into() },
            TwistTerm::Monomial { coeff: "1/2i".into(), h_power: 1, left: "P1".into(), right: "P0".into() },
        ],
        order: 4,
        degree: 2,
        checks: Vec::new(),
    }
}

fn trivial() -> PresetSpec {
    let mut p = igl(2);
    p.name = "trivial".into();
    p.description = "igl(2) acting on two coordinates with the trivial twist F = 1⊗1".into();
    p.twist.clear();
    p.order = 3;
    p.degree = 2;
    p
}

fn pw_jordanian() -> PresetSpec {
    let (mut gens, coordinates, mut actions) = momenta(2);
    gens.push(gen("D", "symmetry"));
    gens.push(gen("M", "symmetry"));
    actions.insert("D".into(), unit_matrix(2, &[(0, 0, "1"), (1, 1, "1")]));
    actions.insert("M".into(), unit_matrix(2, &[(0, 1, "1"), (1, 0, "1")]));
    let brackets = vec![
        bracket("D", "P0", &[("P0", "1")]),
        bracket("D", "P1", &[("P1", "1")]),
        bracket("M", "P0", &[("P1", "1")]),
        bracket("M", "P1", &[("P0", "1")]),
    ];
    PresetSpec {
        name: "pw-jordanian".into(),
        description: "1+1 dimensional Poincaré–Weyl algebra; jordanian twist exp(D ⊗ log(1 − i h P0)), \
                      which reproduces [x0, x1] = i h x1 at order h"
            .into(),
        generators: gens,
        brackets,
        coordinates,
        actions,
        twist: vec![TwistTerm::Log { coeff: "1".into(), left: "D".into(), right: "P0".into(), scale: "-i".into() }],
        order: 4,
        degree: 2,
        checks: Vec::new(),
    }
}

/// The named preset as data (not yet built).
pub fn preset_spec(name: &str) -> Result<PresetSpec> {
    match name {
        "trivial" => Ok(trivial()),
        "heisenberg" => Ok(heisenberg()),
        "igl2-abelian" => Ok(igl(2)),
        "igl4-abelian" => Ok(igl(4)),
        "pw-jordanian" => Ok(pw_jordanian()),
        _ => Err(Error::UnknownPreset(name.to_string())),
    }
}

/// The named preset, validated at `order` (its recommended order if `None`).
pub fn preset(name: &str, order: Option<usize>) -> Result<Setup> {
    let spec = preset_spec(name)?;
    let n = order.unwrap_or(spec.order);
    spec.validate(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_validates_at_its_recommended_order() {
        for name in PRESET_NAMES {
            let spec = preset_spec(name).unwrap();
            let n = spec.order.min(3);
            let entries = spec.validation_entries(n);
            assert!(entries.iter().all(CheckEntry::passed), "{name}: {entries:#?}");
        }
    }

    #[test]
    fn unknown_name_is_rejected() {
        assert!(matches!(preset("so24", None), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn perturbed_structure_constant_breaks_jacobi() {
        let mut spec = preset_spec("igl2-abelian").unwrap();
        let b = spec.brackets.iter_mut().find(|b| b.left == "L01" && b.right == "L10").unwrap();
        b.result.insert("L00".into(), "2".into());
        let entries = spec.validation_entries(2);
        assert!(!entries[0].passed());
        assert!(entries[0].witness.as_deref().unwrap().contains("Jacobi"));
        assert!(matches!(spec.validate(2), Err(Error::InvalidPreset { .. })));
    }

    #[test]
    fn trivial_has_zero_exponent() {
        let s = preset("trivial", Some(2)).unwrap();
        assert!(s.twist.is_trivial());
    }

    #[test]
    fn json_round_trip_preserves_presets() {
        for name in PRESET_NAMES {
            let spec = preset_spec(name).unwrap();
            let text = serde_json::to_string(&spec).unwrap();
            let back: PresetSpec = serde_json::from_str(&text).unwrap();
            assert_eq!(spec, back);
        }
    }

    #[test]
    fn jordanian_log_expansion() {
        let s = preset_spec("pw-jordanian").unwrap();
        let b = s.build(3).unwrap();
        let rs = b.ma.bialg.rs();
        let t = s.exponent(rs, 3).unwrap();
        // D ⊗ (−i h P0 + (1/2) h² P0² + (i/3) h³ P0³)
        let d = rs.index("D").unwrap();
        let p = rs.index("P0").unwrap();
        let w = |k: usize| -> crate::ncpoly::Word {
            std::iter::once(Gen::new(1, d)).chain(std::iter::repeat_n(Gen::new(2, p), k)).collect()
        };
        let gi = GaussRational::i();
        assert_eq!(t.coeff(&w(1)), TruncSeries::monomial(-gi.clone(), 1, 3));
        assert_eq!(t.coeff(&w(2)), TruncSeries::monomial(GaussRational::from_frac(1, 2), 2, 3));
        assert_eq!(t.coeff(&w(3)), TruncSeries::monomial(&gi * &GaussRational::from_frac(1, 3), 3, 3));
        assert_eq!(t.len(), 3);
    }
}
