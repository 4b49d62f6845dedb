//! Analyses behind the command-line subcommands, as ordered reports.

use std::fmt::Write as _;

use crate::cohomology::{Cohomology, Pullback};
use crate::groups::{BilinearForm, GroupKind, LieAlgebra};
use crate::problem::Problem;
use crate::representation::{BurnsideVerdict, Irreducibility};
use crate::scheme::build_system;
use crate::symplectic::SurfacePairing;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    /// Where a number comes from: a formula or the computation behind it.
    pub source: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    entries: Vec<Entry>,
    failed: bool,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.entries.push(Entry {
            key: key.into(),
            value: value.to_string(),
            source: None,
        });
    }

    pub fn push_with(&mut self, key: &str, value: impl ToString, source: &str) {
        self.entries.push(Entry {
            key: key.into(),
            value: value.to_string(),
            source: Some(source.into()),
        });
    }

    /// Records an error and marks the report failed.
    pub fn fail(&mut self, message: impl ToString) {
        self.push("error", message);
        self.failed = true;
    }

    pub fn failed(&self) -> bool {
        self.failed
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|e| e.key == key).map(|e| e.value.as_str())
    }

    /// One `key = value` per line.
    pub fn machine(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let _ = writeln!(out, "{} = {}", e.key, e.value);
        }
        out
    }

    pub fn human(&self) -> String {
        let width = self.entries.iter().map(|e| e.key.len()).max().unwrap_or(0);
        let mut out = String::new();
        for e in &self.entries {
            let key = e.key.replace('_', " ");
            let _ = match &e.source {
                Some(s) => writeln!(out, "{key:<width$}  {}  [{s}]", e.value),
                None => writeln!(out, "{key:<width$}  {}", e.value),
            };
        }
        out
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Validation, centralizer, irreducibility and `H¹`.
pub fn analyze(problem: &Problem, word_cap: usize) -> Report {
    let mut r = Report::new();
    let rho = problem.representation();
    let family = problem.family;
    let p = &problem.presentation;
    r.push("presentation", p);
    r.push("target", family);
    let violations = rho.validate();
    if !violations.is_empty() {
        for v in &violations {
            r.push("violation", v);
        }
        r.fail("representation is invalid");
        return r;
    }
    r.push("validation", "ok");

    let coh = match Cohomology::new(&rho) {
        Ok(c) => c,
        Err(e) => {
            r.fail(e);
            return r;
        }
    };
    let dim = family.dim();
    let center = family.center_dim();
    r.push_with("dim_G", dim, "classical dimension");
    r.push_with("center_dim", center, "dim C(G)");
    let c = coh.adjoint().centralizer();
    r.push_with("h0_dim", c.h0_dim, "kernel of stacked Ad rho(g_i) - I");
    r.push_with("orbit_dim", c.orbit_dim, "dim G - h0_dim");

    let burnside_irreducible = if family.is_gl_or_sl() {
        let b = rho.burnside_irreducible(word_cap).expect("GL/SL target");
        let verdict = match b.verdict {
            BurnsideVerdict::Irreducible => "irreducible",
            BurnsideVerdict::Inconclusive => "inconclusive",
        };
        r.push_with("burnside", verdict, "span of word images in M(n)");
        r.push_with(
            "burnside_span_dim",
            b.span_dim,
            &format!("words up to length {word_cap}"),
        );
        b.verdict == BurnsideVerdict::Irreducible
    } else {
        r.push("burnside", "not applicable");
        false
    };
    let cr = if c.h0_dim == center {
        Irreducibility::Irreducible
    } else {
        Irreducibility::Reducible
    };
    let cr_text = match cr {
        Irreducibility::Irreducible => "irreducible",
        Irreducibility::Reducible => "reducible",
    };
    r.push_with(
        "cr_criterion",
        cr_text,
        "h0_dim = center_dim, assuming complete reducibility",
    );
    if !burnside_irreducible {
        r.push(
            "warning",
            "complete reducibility is assumed, not checked; the criterion is unconfirmed",
        );
    }
    let irreducible = burnside_irreducible || cr == Irreducibility::Irreducible;
    if irreducible && c.h0_dim == center {
        r.push("good", "good (dimension-level)");
        r.push(
            "limitation",
            "the finite part of the centralizer modulo the center is not computed",
        );
    } else {
        r.push("good", "no");
    }

    let s = coh.summary();
    r.push_with("z1_dim", s.z1_dim, "kernel of the relator constraint matrix");
    r.push_with("b1_dim", s.b1_dim, "dim g - h0_dim");
    r.push_with("h1_dim", s.h1_dim, "z1_dim - b1_dim");

    if let Some(g) = p.surface_genus() {
        let expected_z1 = (2 * g - 1) * dim + center;
        r.push_with("expected_z1_dim", expected_z1, "(2g-1) dim G + dim C(G)");
        let smooth = if s.z1_dim == expected_z1 {
            "scheme smooth"
        } else {
            "not certified smooth"
        };
        r.push_with("smoothness", smooth, "z1_dim vs (2g-1) dim G + dim C(G)");
        let expected_h1 = (2 * g - 2) * dim + 2 * center;
        r.push_with(
            "expected_h1_dim",
            expected_h1,
            "(2g-2) dim G + 2 dim C(G), good representations",
        );
    } else if p.is_free() {
        let n = p.generator_count();
        let expected = n.saturating_sub(1) * dim + center;
        r.push_with(
            "expected_h1_dim",
            expected,
            "(n-1) dim G + dim C(G), good representations",
        );
    }
    r.push_with("rigid", yes_no(s.h1_dim == 0), "h1_dim = 0");
    r
}

/// Equations, Jacobian rank and tangent dimension, cross-checked with `Z¹`.
pub fn scheme_report(problem: &Problem, emit_equations: bool) -> Report {
    let mut r = Report::new();
    let rho = problem.representation();
    r.push("presentation", &problem.presentation);
    r.push("target", problem.family);
    if !matches!(problem.family.kind(), GroupKind::GL | GroupKind::SL) {
        r.fail(format!(
            "scheme equations are unsupported for {}; only GL and SL targets",
            problem.family
        ));
        return r;
    }
    if let Err(e) = rho.ensure_valid() {
        r.fail(e);
        return r;
    }
    let system = build_system(&problem.presentation, problem.family).expect("GL/SL target");
    r.push("variables", system.variables().len());
    r.push_with(
        "determinant_equations",
        system.determinant_equations().len(),
        "one per generator",
    );
    r.push_with("relator_equations", system.relator_equations().len(), "n^2 per relator");
    let point = system.point_from_representation(&rho).expect("shapes match");
    let rank = match system.jacobian_rank_at(&point) {
        Ok(k) => k,
        Err(e) => {
            r.fail(e);
            return r;
        }
    };
    let tangent = system.variables().len() - rank;
    r.push_with("jacobian_rank", rank, "exact rank of the Jacobian at rho");
    r.push_with("tangent_dim", tangent, "variables - jacobian_rank");
    let z1 = Cohomology::new(&rho).expect("valid").z1_basis().len();
    r.push_with("z1_dim", z1, "kernel of the relator constraint matrix");
    let pass = if tangent == z1 { "PASS" } else { "FAIL" };
    r.push("tangent_dim_equals_z1_dim", pass);
    if tangent != z1 {
        r.failed = true;
    }
    if emit_equations {
        for (k, e) in system.equations().iter().enumerate() {
            r.push(
                &format!("equation_{}", k + 1),
                format!("{} = 0", e.format_with(system.variables())),
            );
        }
    }
    r
}

fn user_form(problem: &Problem, r: &mut Report) -> Result<Option<BilinearForm>, ()> {
    let Some(gram) = &problem.gram else {
        r.push("form", "trace form");
        return Ok(None);
    };
    let lie = LieAlgebra::new(problem.family);
    match BilinearForm::new(&lie, gram.clone()) {
        Ok(f) => {
            r.push("form", "user gram matrix");
            Ok(Some(f))
        }
        Err(e) => {
            r.fail(e);
            Err(())
        }
    }
}

/// Image of `H¹` of the target under restriction to the surface source.
pub fn lagrangian_report(problem: &Problem) -> Report {
    let mut r = Report::new();
    let Some(hom) = &problem.hom else {
        r.fail("problem has no [hom] section");
        return r;
    };
    r.push("surface", hom.source());
    r.push("target_group", &problem.presentation);
    r.push("target", problem.family);
    let Some(genus) = hom.source().surface_genus() else {
        r.fail("the [hom] source is not a surface presentation");
        return r;
    };
    let rho = problem.representation();
    if let Err(e) = rho.ensure_valid() {
        r.fail(e);
        return r;
    }
    let Ok(form) = user_form(problem, &mut r) else {
        return r;
    };
    let pb = match Pullback::new(hom, &rho) {
        Ok(pb) => pb,
        Err(e) => {
            r.fail(e);
            return r;
        }
    };
    let pairing = SurfacePairing::new(pb.source().representation(), form).expect("valid surface rep");
    let images = pb
        .target()
        .z1_basis()
        .iter()
        .map(|z| pb.apply(z))
        .collect::<Result<Vec<_>, _>>();
    let images = match images {
        Ok(v) => v,
        Err(e) => {
            r.fail(e);
            return r;
        }
    };
    let h1 = pairing.summary().h1_dim;
    let iso = pairing.isotropy(&images).expect("pullbacks are cocycles");
    r.push("genus", genus);
    r.push_with(
        "h1_dim_surface",
        h1,
        "H1 of the surface at the restricted representation",
    );
    r.push_with("image_dim", iso.dim, "rank of restricted cocycles modulo B1");
    r.push_with("half_h1_dim", h1 / 2, "h1_dim_surface / 2");
    r.push_with(
        "isotropic",
        yes_no(iso.isotropic),
        "omega on all pairs of restricted cocycles",
    );
    let verdict = if iso.lagrangian { "LAGRANGIAN" } else { "not Lagrangian" };
    r.push_with("lagrangian", verdict, "isotropic and image_dim = h1_dim_surface / 2");
    r
}

/// The pairing matrix on the `H¹` representatives.
pub fn omega_report(problem: &Problem) -> Report {
    let mut r = Report::new();
    r.push("presentation", &problem.presentation);
    r.push("target", problem.family);
    let rho = problem.representation();
    if let Err(e) = rho.ensure_valid() {
        r.fail(e);
        return r;
    }
    let Ok(form) = user_form(problem, &mut r) else {
        return r;
    };
    let pairing = match SurfacePairing::new(&rho, form) {
        Ok(p) => p,
        Err(e) => {
            r.fail(e);
            return r;
        }
    };
    let omega = match pairing.omega() {
        Ok(o) => o,
        Err(e) => {
            r.fail(e);
            return r;
        }
    };
    r.push(
        "orientation",
        "genus-1 untwisted pairing of dual generator cochains is +1",
    );
    r.push_with("h1_dim", omega.dim(), "z1_dim - b1_dim");
    r.push("antisymmetric", "yes");
    r.push_with("rank", omega.rank, "exact rank of the pairing matrix");
    r.push("verdict", omega.label());
    for i in 0..omega.dim() {
        let row: Vec<String> = omega.gram.row(i).iter().map(ToString::to_string).collect();
        r.push(&format!("omega_row_{}", i + 1), row.join(" "));
    }
    r
}
