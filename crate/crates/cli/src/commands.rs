//! The pipelines behind each command. Every command returns the files it wants written.

use std::collections::BTreeMap;

use conewh::cone::spec::ConeSpec;
use conewh::convex::{build_trivialization, membership_margin, plane_rotation};
use conewh::strata::report::{lattice_report, spectrum_report, strata_report};
use conewh::strata::{hausdorff, pk_converges, ray_limit, sample_on_grid, strata, PkGrid, SampledSet};
use conewh::wh::{classical_index, hierarchy_fredholm, HierarchyConfig, TruncationStats, WhCone};
use conewh::{parse_rational, Error, ExactCone, FloatCone, VERSION};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::spec::{self, ConeRef, HierarchySpec, IndexSpec, PkSpec, TrivSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Lattice,
    Strata,
    Spectrum,
    Trivialize,
    Index1d,
    Hierarchy2d,
    Pklimit,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Lattice => "lattice",
            Command::Strata => "strata",
            Command::Spectrum => "spectrum",
            Command::Trivialize => "trivialize",
            Command::Index1d => "index1d",
            Command::Hierarchy2d => "hierarchy2d",
            Command::Pklimit => "pklimit",
        }
    }

    /// Tolerance keys accepted by `--tol`.
    pub fn tolerances(self) -> &'static [&'static str] {
        match self {
            Command::Trivialize => &["margin", "det"],
            Command::Hierarchy2d => &["min_ratio", "delta", "neumann"],
            Command::Pklimit => &["eps", "match"],
            _ => &[],
        }
    }

    pub fn needs_seed(self) -> bool {
        self == Command::Trivialize
    }
}

pub struct Run {
    pub command: Command,
    pub input: String,
    pub text: String,
    pub seed: Option<u64>,
    pub tol: BTreeMap<String, f64>,
}

pub struct Output {
    pub name: &'static str,
    pub contents: String,
}

impl Run {
    fn tol(&self, key: &str, default: f64) -> f64 {
        self.tol.get(key).copied().unwrap_or(default)
    }

    fn report(&self, spec: Value, result: Value) -> Output {
        let doc = json!({
            "version": VERSION,
            "command": self.command.name(),
            "config": {
                "input": self.input,
                "seed": self.seed,
                "tolerances": self.tol,
                "spec": spec,
            },
            "result": result,
        });
        Output { name: "report.json", contents: serde_json::to_string_pretty(&doc).expect("plain data serialises") + "\n" }
    }
}

pub fn run(r: &Run) -> Result<Vec<Output>, Error> {
    match r.command {
        Command::Lattice | Command::Strata | Command::Spectrum => cone_reports(r),
        Command::Trivialize => trivialize(r),
        Command::Index1d => index1d(r),
        Command::Hierarchy2d => hierarchy2d(r),
        Command::Pklimit => pklimit(r),
    }
}

fn cone_reports(r: &Run) -> Result<Vec<Output>, Error> {
    let cone_spec = ConeSpec::parse(&r.text)?;
    let s = strata(&cone_spec.to_cone()?)?;
    let result = match r.command {
        Command::Lattice => lattice_report(&s),
        Command::Strata => strata_report(&s)?,
        _ => spectrum_report(&s)?,
    };
    Ok(vec![r.report(serde_json::to_value(&cone_spec).expect("plain data"), result)])
}

const CSV_HEADER: [&str; 8] = ["experiment", "N", "sigma_min", "dim_ker", "dim_coker", "index", "winding", "verdict"];

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn csv_text(rows: &[[String; 8]]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn index1d(r: &Run) -> Result<Vec<Output>, Error> {
    let spec: IndexSpec = spec::parse(&r.text)?;
    if spec.cone != "half-line" {
        return Err(Error::GridConeMismatch(format!("index1d runs on the half-line, not {:?}", spec.cone)));
    }
    let kernel = spec.symbol.resolve()?;
    if kernel.dim() != 1 {
        return Err(Error::InvalidGrid("classical index needs a one-dimensional symbol".into()));
    }
    let grid = kernel.sample(spec.h, spec.t)?;
    let rep = classical_index(&grid, &spec.sizes)?;
    let resolved = rep.numerical.is_some();
    let rows: Vec<[String; 8]> = rep
        .sections
        .iter()
        .map(|st: &TruncationStats| {
            [
                spec.experiment.clone(),
                st.n.to_string(),
                format!("{:e}", st.sigma_min),
                if resolved { st.dim_ker.to_string() } else { String::new() },
                if resolved { st.dim_coker.to_string() } else { String::new() },
                opt(rep.index),
                opt(rep.winding),
                rep.verdict.as_str().to_string(),
            ]
        })
        .collect();
    let result = json!({
        "experiment": spec.experiment,
        "kernel": kernel,
        "report": rep,
    });
    let mut spec_json = serde_json::to_value(&spec).expect("plain data");
    spec_json["symbol_resolved"] = serde_json::to_value(&kernel).expect("plain data");
    Ok(vec![r.report(spec_json, result), Output { name: "results.csv", contents: csv_text(&rows) }])
}

fn hierarchy2d(r: &Run) -> Result<Vec<Output>, Error> {
    let spec: HierarchySpec = spec::parse(&r.text)?;
    if spec.cone != "quarter-plane" {
        return Err(Error::GridConeMismatch("hierarchy implemented for the quarter plane".into()));
    }
    let kernel = spec.symbol.resolve()?;
    let grid = kernel.sample(spec.h, spec.t)?;
    let mut cfg = HierarchyConfig::for_grid(&grid);
    if let Some(s) = spec.sizes {
        cfg.sizes = (s[0], s[1]);
    }
    if let Some(ys) = &spec.ys {
        cfg.ys = ys.clone();
    }
    cfg.min_ratio = r.tol("min_ratio", cfg.min_ratio);
    cfg.delta = r.tol("delta", cfg.delta);
    let rep = hierarchy_fredholm(&grid, &WhCone::QuarterPlane, &cfg)?;
    let mut rows = Vec::new();
    for f in &rep.face_reports {
        for (n, pick) in [(cfg.sizes.0, 0), (cfg.sizes.1, 1)] {
            let sigma = f
                .samples
                .iter()
                .map(|s| if pick == 0 { s.sigma_n1 } else { s.sigma_n2 })
                .fold(f64::INFINITY, f64::min);
            rows.push([
                format!("{}/{}", spec.experiment, f.label),
                n.to_string(),
                format!("{sigma:e}"),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                if f.passed { "face-invertible" } else { "face-singular" }.to_string(),
            ]);
        }
    }
    let neumann = rep.neumann_margin.unwrap_or(f64::NAN);
    let result = json!({
        "experiment": spec.experiment,
        "kernel": kernel,
        "config": {"sizes": [cfg.sizes.0, cfg.sizes.1], "ys": cfg.ys, "min_ratio": cfg.min_ratio, "delta": cfg.delta},
        "failing_faces": rep.failing_faces(),
        "neumann_certified": neumann > r.tol("neumann", 1e-8),
        "report": rep,
    });
    Ok(vec![
        r.report(serde_json::to_value(&spec).expect("plain data"), result),
        Output { name: "results.csv", contents: csv_text(&rows) },
    ])
}

fn cone_json(name: &str, c: &ExactCone) -> Value {
    json!({
        "generators": ConeSpec::from_cone_generators(name, c).generators,
        "inequalities": ConeSpec::from_cone_inequalities(name, c).inequalities,
        "lineality": c.lineality().iter().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn pklimit(r: &Run) -> Result<Vec<Output>, Error> {
    let spec: PkSpec = spec::parse(&r.text)?;
    let omega = spec.cone.resolve()?;
    let x: Vec<_> = spec
        .direction
        .iter()
        .map(|s| parse_rational(s).ok_or_else(|| Error::Parse(format!("not an exact rational: {s:?}"))))
        .collect::<Result<_, _>>()?;
    let limit = ray_limit(&omega, &x)?;
    if !(spec.step > 0.0) || !(spec.radius > 0.0) {
        return Err(Error::InvalidInput("grid radius and step must be positive".into()));
    }
    let n = omega.ambient_dim();
    let grid = PkGrid::cube(n, spec.radius, spec.step);
    let om: FloatCone = omega.as_f64();
    let xf: Vec<f64> = x.iter().map(|v| conewh::Scalar::as_f64(v)).collect();
    let lim_f: FloatCone = limit.as_f64();
    let target = sample_on_grid(&grid, |g| lim_f.contains(g), "ray limit");
    let seq: Vec<SampledSet> = spec
        .lambdas
        .iter()
        .map(|&l| {
            sample_on_grid(
                &grid,
                |g| om.contains(&xf.iter().zip(g).map(|(a, b)| l * a - b).collect::<Vec<_>>()),
                format!("{l}x - cone"),
            )
        })
        .collect();
    let eps = r.tol("eps", spec.step);
    let match_tol = r.tol("match", 10.0 * spec.step);
    let (lo, hi, converged) = pk_converges(&seq, eps, &grid)?;
    let d_lo = hausdorff(&lo, &target);
    let d_hi = hausdorff(&hi, &target);
    let sequence: Vec<Value> = spec
        .lambdas
        .iter()
        .zip(&seq)
        .map(|(l, s)| json!({"lambda": l, "points": s.points.len(), "hausdorff_to_limit": hausdorff(s, &target)}))
        .collect();
    let result = json!({
        "ray_limit": cone_json("ray-limit", &limit),
        "grid": {"radius": spec.radius, "step": spec.step, "points": grid.points().len()},
        "sequence": sequence,
        "liminf_points": lo.points.len(),
        "limsup_points": hi.points.len(),
        "limit_points": target.points.len(),
        "converged": converged,
        "hausdorff_liminf": d_lo,
        "hausdorff_limsup": d_hi,
        "eps": eps,
        "match_tol": match_tol,
        "matches_ray_limit": converged && d_lo <= match_tol && d_hi <= match_tol,
    });
    Ok(vec![r.report(serde_json::to_value(&spec).expect("plain data"), result)])
}

fn trivialize(r: &Run) -> Result<Vec<Output>, Error> {
    let spec: TrivSpec = spec::parse(&r.text)?;
    let seed = r.seed.ok_or_else(|| Error::InvalidInput("trivialize needs --seed".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base: FloatCone = spec.base.resolve()?.as_f64();
    let n = base.ambient_dim();
    let mut nearby: Vec<(Value, FloatCone)> = Vec::new();
    for (i, c) in spec.nearby.iter().enumerate() {
        let label = match c {
            ConeRef::Named(name) => json!(name),
            ConeRef::Inline(s) => json!(format!("{}#{i}", s.name)),
        };
        nearby.push((label, c.resolve()?.as_f64()));
    }
    if let Some(rot) = &spec.rotation {
        let [i, j] = rot.plane;
        if i == j || i >= n || j >= n {
            return Err(Error::InvalidInput(format!("rotation plane {:?} invalid in dimension {n}", rot.plane)));
        }
        for &deg in &rot.degrees {
            nearby.push((json!(deg), base.linear_image(&plane_rotation(n, i, j, deg.to_radians()))?));
        }
    }
    if nearby.is_empty() {
        return Err(Error::EmptyInput);
    }
    let xi0 = match &spec.xi0 {
        Some(v) => v.clone(),
        None => base.relative_interior_point(),
    };
    let margin_tol = r.tol("margin", 1e-8);
    let det_tol = r.tol("det", 1e-6);
    let mut entries = Vec::new();
    let mut all_pass = true;
    for (label, f) in &nearby {
        let t = build_trivialization(&base, f, &xi0)?;
        let (small, big) = t.radii();
        let samples = t.sample_source(&mut rng, spec.samples);
        let (mut margin, mut det_err) = (f64::INFINITY, 0.0f64);
        let (mut det_lo, mut det_hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for x in &samples {
            margin = margin.min(membership_margin(t.target(), &t.apply(x)?));
            let lam = t.lambda(x)?;
            let d = t.det(x)?;
            det_err = det_err.max((d - lam).abs() / lam);
            det_lo = det_lo.min(d);
            det_hi = det_hi.max(d);
        }
        let (_, (norm_lo, norm_hi)) = t.normalised(&samples)?;
        let bound = t.psi_lipschitz_bound()?;
        let lip = t.empirical_lipschitz(&mut rng, spec.pairs)?;
        let pass = margin > -margin_tol && det_err < det_tol && lip <= bound;
        all_pass &= pass;
        entries.push(json!({
            "nearby": label,
            "radii": [small, big],
            "lipschitz_bound": t.lipschitz_bound()?,
            "psi_lipschitz_bound": bound,
            "empirical_lipschitz": lip,
            "min_margin": margin,
            "det_vs_lambda_rel_err": det_err,
            "det_range": [det_lo, det_hi],
            "normalised_det_range": [norm_lo, norm_hi],
            "passed": pass,
        }));
    }
    let result = json!({
        "base": cone_json("base", &spec.base.resolve()?),
        "xi0": xi0,
        "trivializations": entries,
        "passed": all_pass,
    });
    Ok(vec![r.report(serde_json::to_value(&spec).expect("plain data"), result)])
}
