//! Human-readable rendering of a [`Report`].

use std::fmt::Write;

use schur_rigidity::Cplx;

use crate::model::{RationalJson, Report, Status};

fn c(z: &Cplx) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

fn poly(v: &[Cplx]) -> String {
    let terms: Vec<String> = v.iter().map(c).collect();
    format!("[{}]", terms.join(", "))
}

fn rational(f: &RationalJson) -> String {
    format!("num {} / den {}", poly(&f.num), poly(&f.den))
}

pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let status = match r.status {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Invalid => "INVALID",
    };
    let _ = writeln!(out, "{}: {status}", r.command);
    if let Some(e) = &r.error {
        let _ = writeln!(out, "  error: {e}");
    }
    if let Some(p) = &r.pick {
        let _ = writeln!(
            out,
            "  P: {}x{}, inertia (positive {}, negative {}, zero {}), condition {:.3e}",
            p.matrix.len(),
            p.matrix.len(),
            p.inertia.positive,
            p.inertia.negative,
            p.inertia.zero,
            p.condition
        );
    }
    if let Some(p) = &r.p {
        let _ = writeln!(out, "  p: {}", poly(p));
    }
    if let Some(t) = &r.theta {
        for (name, e) in [("a", &t.a), ("b", &t.b), ("c", &t.c), ("d", &t.d)] {
            let _ = writeln!(out, "  theta.{name}: {}", rational(e));
        }
    }
    if let Some(s) = &r.solution {
        let _ = writeln!(out, "  solution: {}", rational(s));
    }
    if let Some(e) = &r.expansion {
        let worst = e.residuals.iter().copied().fold(0.0, f64::max);
        let _ = writeln!(
            out,
            "  expansion: {} ({} coefficients, largest residual {worst:.2e})",
            if e.passed { "matches" } else { "MISMATCH" },
            e.expected.len()
        );
    }
    if let Some(n) = &r.negative_squares {
        let _ = writeln!(
            out,
            "  negative squares: parameter {} + ev_neg(P) {} = predicted {}, observed {}",
            n.parameter, n.ev_neg_p, n.predicted, n.observed
        );
    }
    if let Some(e) = &r.estimate {
        let poles = e.pole_count.map_or("n/a".to_string(), |n| n.to_string());
        let _ = writeln!(
            out,
            "  negative squares estimate: {} (poles in disk: {poles})",
            e.estimate
        );
        for (pts, neg) in &e.rounds {
            let _ = writeln!(out, "    {pts} points: {neg} negative");
        }
    }
    if let Some(f) = &r.factor {
        let _ = writeln!(out, "  s0: {}", rational(&f.s0));
        let zeros: Vec<String> = f.zeros.iter().map(c).collect();
        let _ = writeln!(out, "  b: zeros [{}], constant {}", zeros.join(", "), c(&f.constant));
    }
    if let Some(v) = &r.rigidity {
        let _ = writeln!(
            out,
            "  rigidity: observed order {} (required {}), forced {}, identity {}, consistent {}",
            v.observed_order, v.required_order, v.forced_identity, v.identity_holds, v.consistent
        );
        let _ = writeln!(out, "    {}", v.residual_report);
    }
    if let Some(e) = &r.equivalences {
        let _ = writeln!(
            out,
            "  conditions: affine {}, constant parameter {}, parameter bound {}, horocycle {}",
            e.affine, e.constant_parameter, e.parameter_bound, e.horocycle
        );
    }
    for ch in &r.checks {
        let _ = writeln!(
            out,
            "  [{}] {}: {}",
            if ch.passed { "PASS" } else { "FAIL" },
            ch.name,
            ch.detail
        );
    }
    out
}
