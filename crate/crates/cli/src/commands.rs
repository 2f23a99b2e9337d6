//! The `ft`, `oracle`, `tile-check`, and `interval-demo` subcommands.

use latticeft::bodies::{Ball, Body, Factor, Interval1};
use latticeft::oracle::{
    ball_ft_slab_quadrature, mc_indicator_ft, polygon_ft_quadrature, QuadratureSpec,
};
use latticeft::rational::format_rational;
use latticeft::tiling::{
    exponential_orthogonality_check, k_tiling_check, spectral_tiling_check, KTilingVerdict,
    Lattice2,
};
use latticeft::transform::Frequency;
use num_complex::Complex64;
use serde_json::{json, Value};
use std::path::Path;

use crate::CliError;

/// Oracle value for any supported body: quadrature for polygons, the slab
/// rule for balls and intervals, factor products for product bodies.
pub fn oracle_value(body: &Body, xi: &Frequency, spec: &QuadratureSpec) -> Complex64 {
    match body {
        Body::Polygon(p) => polygon_ft_quadrature(p, xi, spec).expect("dimension checked"),
        Body::Ball(b) => {
            Complex64::new(ball_ft_slab_quadrature(b, xi, spec).expect("dimension checked"), 0.0)
        }
        Body::Interval(i) => {
            let as_ball = Ball::new(1, i.half_length().clone()).expect("positive half-length");
            Complex64::new(
                ball_ft_slab_quadrature(&as_ball, xi, spec).expect("dimension checked"),
                0.0,
            )
        }
        Body::Product(p) => {
            let mut acc = Complex64::new(1.0, 0.0);
            let mut offset = 0;
            for f in p.factors() {
                let d = f.dim();
                let block = Frequency::new(xi.coords()[offset..offset + d].to_vec());
                offset += d;
                let factor_body = match f {
                    Factor::Polygon(p) => Body::Polygon(p.clone()),
                    Factor::Ball(b) => Body::Ball(b.clone()),
                    Factor::Interval(i) => Body::Interval(i.clone()),
                };
                acc *= oracle_value(&factor_body, &block, spec);
            }
            acc
        }
    }
}

pub fn write_or_print_json(value: &Value, out: Option<&Path>, to_stdout: bool) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("report serializes");
    if let Some(path) = out {
        std::fs::write(path, text.as_bytes())
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    if to_stdout {
        println!("{text}");
    }
    Ok(())
}

pub struct FtArgs {
    pub body: Body,
    pub xi: Frequency,
    pub with_oracle: bool,
    pub order: usize,
    pub json: bool,
    pub out: Option<std::path::PathBuf>,
}

pub fn cmd_ft(args: FtArgs) -> Result<(), CliError> {
    let ft = args
        .body
        .ft(&args.xi)
        .map_err(|e| CliError::Input(e.to_string()))?;
    let mut report = json!({
        "xi": args.xi.coords().iter().map(format_rational).collect::<Vec<_>>(),
        "re": ft.value.re,
        "im": ft.value.im,
        "abs": ft.value.norm(),
        "branch": ft.branch.to_string(),
    });
    if !args.json {
        println!(
            "FT = {:+.12e} {:+.12e} i   |FT| = {:.12e}   branch: {}",
            ft.value.re,
            ft.value.im,
            ft.value.norm(),
            ft.branch
        );
    }
    if args.with_oracle {
        let spec = QuadratureSpec::with_order(args.order);
        let oracle = oracle_value(&args.body, &args.xi, &spec);
        let diff = (ft.value - oracle).norm();
        report["oracle"] = json!({
            "re": oracle.re,
            "im": oracle.im,
            "abs_diff": diff,
            "order": args.order,
        });
        if !args.json {
            println!(
                "oracle = {:+.12e} {:+.12e} i   |diff| = {:.3e}",
                oracle.re, oracle.im, diff
            );
        }
    }
    write_or_print_json(&report, args.out.as_deref(), args.json)
}

pub struct OracleArgs {
    pub body: Body,
    pub xi: Frequency,
    pub order: usize,
    pub with_mc: bool,
    pub samples: u64,
    pub seed: u64,
    pub json: bool,
    pub out: Option<std::path::PathBuf>,
}

pub fn cmd_oracle(args: OracleArgs) -> Result<(), CliError> {
    let closed = args
        .body
        .ft(&args.xi)
        .map_err(|e| CliError::Input(e.to_string()))?;
    let spec = QuadratureSpec {
        order: args.order,
        mc_samples: args.samples,
        seed: args.seed,
    };
    let quad = oracle_value(&args.body, &args.xi, &spec);
    let diff = (closed.value - quad).norm();
    let mut report = json!({
        "xi": args.xi.coords().iter().map(format_rational).collect::<Vec<_>>(),
        "closed_form": { "re": closed.value.re, "im": closed.value.im, "branch": closed.branch.to_string() },
        "quadrature": { "re": quad.re, "im": quad.im, "order": args.order },
        "abs_diff": diff,
    });
    if !args.json {
        println!("closed form = {:+.12e} {:+.12e} i  (branch: {})", closed.value.re, closed.value.im, closed.branch);
        println!("quadrature  = {:+.12e} {:+.12e} i   |diff| = {:.3e}", quad.re, quad.im, diff);
    }
    if args.with_mc {
        let est = mc_indicator_ft(&args.body, &args.xi, &spec)
            .map_err(|e| CliError::Input(e.to_string()))?;
        let within = est.consistent_with(closed.value, 4.0);
        report["monte_carlo"] = json!({
            "re": est.re,
            "im": est.im,
            "std_err_re": est.std_err_re,
            "std_err_im": est.std_err_im,
            "samples": est.samples,
            "seed": args.seed,
            "within_4_std_err_of_closed_form": within,
        });
        if !args.json {
            println!(
                "monte carlo = {:+.6e} {:+.6e} i   se = ({:.2e}, {:.2e})   n = {}   {}",
                est.re,
                est.im,
                est.std_err_re,
                est.std_err_im,
                est.samples,
                if within { "consistent (4 se)" } else { "OUTSIDE 4 se" }
            );
        }
    }
    write_or_print_json(&report, args.out.as_deref(), args.json)
}

pub struct TileCheckArgs {
    pub body: Body,
    pub lattice: Lattice2,
    pub expected_k: u32,
    pub range: i64,
    pub tol: f64,
    pub samples: u64,
    pub seed: u64,
    pub eps: f64,
    pub orthogonality_pairs: u64,
    pub json: bool,
    pub out: Option<std::path::PathBuf>,
}

pub fn cmd_tile_check(args: TileCheckArgs) -> Result<(), CliError> {
    let Body::Polygon(polygon) = &args.body else {
        return Err(CliError::Input(
            "tile-check needs a polygon body (R, H, square:s, or a JSON file)".into(),
        ));
    };
    let sampled = k_tiling_check(polygon, &args.lattice, args.samples, args.seed, args.eps);
    let spectral = spectral_tiling_check(polygon, &args.lattice, args.range, args.tol);
    let orth = exponential_orthogonality_check(
        polygon,
        &args.lattice,
        args.orthogonality_pairs,
        args.range,
        args.seed,
        args.tol,
    );

    let (verdict_str, k) = match sampled.verdict {
        KTilingVerdict::KTiling(k) => ("k-tiling", Some(k)),
        KTilingVerdict::NotTiling => ("not-tiling", None),
        KTilingVerdict::Inconclusive => ("inconclusive", None),
    };
    let histogram: serde_json::Map<String, Value> = sampled
        .histogram
        .counts
        .iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    let report = json!({
        "verdict": verdict_str,
        "k": k,
        "histogram": histogram,
        "skipped": sampled.histogram.skipped_near_boundary,
        "samples": sampled.histogram.samples,
        "seed": args.seed,
        "lattice_basis": args.lattice.basis_strings(),
        "spectral": {
            "pass": spectral.pass,
            "area_matches_covolume": spectral.area_matches_covolume,
            "max_abs": spectral.max_abs,
            "worst_point": spectral.worst_xi,
            "range": spectral.range,
            "tol": spectral.tol,
        },
        "orthogonality": {
            "pass": orth.pass,
            "pairs": orth.pairs_checked,
            "max_abs": orth.max_abs,
        },
    });
    if !args.json {
        println!(
            "cover-count sampling: {verdict_str}{} ({} samples, {} skipped near boundaries)",
            k.map(|k| format!(" k={k}")).unwrap_or_default(),
            sampled.histogram.samples,
            sampled.histogram.skipped_near_boundary
        );
        println!(
            "spectral criterion: {} (area {} covolume, max |FT| = {:.3e} over |a|,|b| <= {})",
            if spectral.pass { "pass" } else { "fail" },
            if spectral.area_matches_covolume { "==" } else { "!=" },
            spectral.max_abs,
            spectral.range
        );
        println!(
            "dual-exponential orthogonality: {} (max {:.3e} over {} pairs)",
            if orth.pass { "pass" } else { "fail" },
            orth.max_abs,
            orth.pairs_checked
        );
    }
    write_or_print_json(&report, args.out.as_deref(), args.json)?;

    match sampled.verdict {
        KTilingVerdict::Inconclusive => Err(CliError::Inconclusive(
            "every sample fell within eps of a translate boundary".into(),
        )),
        // the spectral criterion decides 1-tilings only, so it must concur
        // exactly when k = 1
        KTilingVerdict::KTiling(1) if args.expected_k == 1 && spectral.pass => Ok(()),
        KTilingVerdict::KTiling(1) if args.expected_k == 1 => {
            Err(CliError::Failure("verifiers disagree: sampler says k=1, spectral check fails".into()))
        }
        KTilingVerdict::KTiling(k) if k == args.expected_k && k > 1 => Ok(()),
        _ => Err(CliError::Failure(format!(
            "tiling check failed: sampled verdict {verdict_str}, expected k = {}",
            args.expected_k
        ))),
    }
}

pub fn cmd_interval_demo(
    h1: &str,
    h2: &str,
    json: bool,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let parse = |s: &str| {
        latticeft::rational::parse_rational(s)
            .map_err(|e| CliError::Input(e.to_string()))
            .and_then(|h| Interval1::new(h).map_err(|e| CliError::Input(e.to_string())))
    };
    let i1 = parse(h1)?;
    let i2 = parse(h2)?;
    let zero = Frequency::zero(1);
    let f1 = latticeft::transform::interval_ft(&i1, &zero).unwrap().value.re;
    let f2 = latticeft::transform::interval_ft(&i2, &zero).unwrap().value.re;
    let agree = (f1 - f2).abs() <= 1e-12;
    let lengths_equal = i1.half_length() == i2.half_length();
    // agreement of FT at 0 pins the length: |I| = FT(0)
    assert!(
        !agree || lengths_equal,
        "FT(0) agreement must imply equal half-lengths"
    );
    let report = json!({
        "half_lengths": [format_rational(i1.half_length()), format_rational(i2.half_length())],
        "ft_at_zero": [f1, f2],
        "agree_at_zero": agree,
        "half_lengths_equal": lengths_equal,
    });
    if !json {
        println!("FT_1(0) = {f1}   FT_2(0) = {f2}");
        if agree {
            println!("equal at 0, so the intervals coincide (half-lengths match)");
        } else {
            println!("differ at 0: distinct intervals are already separated on the lattice");
        }
    }
    write_or_print_json(&report, out, json)
}
