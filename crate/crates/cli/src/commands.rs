use std::fs::{self, OpenOptions};
use std::io::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use hjekr::counting::count_submodules;
use hjekr::enumerate::enumerate_in_shape;
use hjekr::families::file::FamilyFile;
use hjekr::families::stripes::unit_span;
use hjekr::families::{
    bound_catalog, construction_registry, describe_failure, eta_image_family, evaluate_bound, Family,
};
use hjekr::registry::Params;
use hjekr::search::instances::label;
use hjekr::search::{instance_registry, Budget, Status};
use hjekr::{Geometry, Ring, RingSpec, Shape};

use crate::report::{Report, Row};

pub fn ring(spec: &RingSpec) -> Result<Report> {
    let ring = Ring::new(spec)?;
    let mut r = Report::new("ring");
    let row = |check: &str, v: String| Row::info(check, v).ring(spec);
    r.push(row("q", ring.q().to_string()));
    r.push(row("length", ring.length().to_string()));
    r.push(row("size", ring.size().to_string()));
    r.push(row("characteristic", ring.characteristic().to_string()));
    r.push(row("theta", ring.format_elem(ring.theta())));
    let q = ring.q() as u64;
    let units = q.pow(ring.length() as u32) - q.pow(ring.length() as u32 - 1);
    let counted = ring.elements().filter(|&a| ring.is_unit(a)).count();
    r.push(Row::compare("units", units, counted).ring(spec));
    let ideal = ring.elements().filter(|&a| !ring.is_unit(a)).count();
    r.push(Row::compare("maximal-ideal", ring.size() as u64 / q, ideal).ring(spec));
    Ok(r)
}

fn default_lambda(ring: &Ring, n: usize, lambda: Option<&str>) -> Result<Shape> {
    Ok(match lambda {
        Some(l) => l.parse()?,
        None => Shape::free(ring.length(), n),
    })
}

pub fn count(spec: &RingSpec, n: usize, lambda: Option<&str>, mu: &str, verify: bool) -> Result<Report> {
    let ring = Ring::new(spec)?;
    let lambda = default_lambda(&ring, n, lambda)?;
    let mu: Shape = mu.parse()?;
    let formula = count_submodules(&lambda, &mu, ring.q() as u64, ring.length());
    let params = format!("lambda={};mu={}", lambda.exponent_notation(), mu.exponent_notation());
    let mut r = Report::new("count");
    let row = if verify {
        let found = enumerate_in_shape(&ring, &lambda, &mu)?.len();
        Row::compare("count", &formula, found)
    } else {
        Row { formula: Some(formula.to_string()), ..Row::info("count", &formula) }
    };
    r.push(row.ring(spec).params(params));
    Ok(r)
}

pub fn enumerate(spec: &RingSpec, n: usize, lambda: Option<&str>, mu: &str, limit: usize) -> Result<Report> {
    let ring = Ring::new(spec)?;
    let lambda = default_lambda(&ring, n, lambda)?;
    let mu: Shape = mu.parse()?;
    let subs = enumerate_in_shape(&ring, &lambda, &mu)?;
    let params = format!("lambda={};mu={}", lambda.exponent_notation(), mu.exponent_notation());
    let mut r = Report::new("enumerate");
    for s in subs.iter().take(limit) {
        r.push(Row::info("submodule", label(s)).ring(spec).params(&params));
    }
    let formula = count_submodules(&lambda, &mu, ring.q() as u64, ring.length());
    r.push(Row::compare("count", formula, subs.len()).ring(spec).params(&params));
    Ok(r)
}

pub fn geometry(spec: &RingSpec, n: usize) -> Result<Report> {
    let ring = Ring::new(spec)?;
    let g = Geometry::new(&ring, n)?;
    let (m, q) = (ring.length(), ring.q() as u64);
    let mut r = Report::new("geometry");
    let params = format!("n={n}");
    r.push(Row::compare("points", count_submodules(&Shape::free(m, n), &Shape::free(m, 1), q, m), g.num_points()).ring(spec).params(&params));
    for s in 2..n {
        let formula = count_submodules(&Shape::free(m, n), &Shape::free(m, s), q, m);
        r.push(Row::compare(format!("subspaces[{s}]"), formula, g.hjelmslev_subspaces(s).len()).ring(spec).params(&params));
    }
    if m == 2 {
        let p = g.point_submodule(0);
        let class = g.neighbor_class_points(&p, 1)?.count();
        r.push(Row::compare("point-neighbor-class", q.pow(n as u32 - 1), class).ring(spec).params(&params));
    }
    Ok(r)
}

pub fn factor_check(spec: &RingSpec, n: usize, dims: &[usize]) -> Result<Report> {
    let ring = Ring::new(spec)?;
    let g = Geometry::new(&ring, n)?;
    let mut r = Report::new("factor-check");
    let dims: Vec<usize> = if dims.is_empty() { (1..n).collect() } else { dims.to_vec() };
    for s in dims {
        if s == 0 || s >= n {
            bail!("base rank must be in 1..{n}, got {s}");
        }
        let base = unit_span(&ring, n, 0..s);
        let fg = g.factor_geometry(&base, 1)?;
        let rep = fg.verify();
        let params = format!("n={n};s={s}");
        r.push(
            Row::verdict(
                format!("embedding[{s}]"),
                rep.passed(),
                format!("points={} lines={} target={}", rep.factor_points, rep.factor_lines, rep.target_points),
            )
            .ring(spec)
            .params(&params),
        );
        let dim = rep.missing_dimension.map_or("none".to_string(), |d| d.to_string());
        r.push(Row::compare(format!("missing-dimension[{s}]"), rep.expected_missing_dimension, dim).ring(spec).params(&params));
    }
    Ok(r)
}

fn family_rows(r: &mut Report, fam: &Family, check_image: bool) -> Result<()> {
    let spec = fam.problem.ring.spec().clone();
    let params = format!("n={};kappa={};tau={}", fam.problem.n, fam.problem.kappa, fam.problem.tau);
    let by_module = fam.validate()?;
    r.push(Row::info("size", fam.len()).ring(&spec).params(&params));
    let describe = |rep: &hjekr::families::ValidationReport| {
        if rep.passed() {
            format!("{} pairs ok", rep.pairs_checked)
        } else {
            format!("{} violating pairs; {}", rep.violating_pairs, describe_failure(rep))
        }
    };
    r.push(Row::verdict("validate", by_module.passed(), describe(&by_module)).ring(&spec).params(&params));
    let by_elements = fam.validate_by_elements()?;
    r.push(Row::verdict("validate-elements", by_elements.passed(), describe(&by_elements)).ring(&spec).params(&params));
    if check_image && fam.problem.ring.length() == 2 {
        let image = eta_image_family(fam, 1)?;
        let rep = image.validate()?;
        let p = format!("kappa'={};tau'={};images={}", image.problem.kappa, image.problem.tau, image.len());
        r.push(Row::verdict("eta1-image", rep.passed(), describe(&rep)).ring(image.problem.ring.spec()).params(p));
    }
    Ok(())
}

pub fn family_build(id: &str, params: &Params, out: Option<&Path>) -> Result<Report> {
    let registry = construction_registry();
    let c = registry.get(id)?;
    let fam = c.build(params)?;
    let mut r = Report::new("family build");
    r.push(Row::info("construction", id).params(params));
    family_rows(&mut r, &fam, true)?;
    for (bound, bp) in c.claims(params)? {
        let value = evaluate_bound(bound, &bp)?;
        r.push(Row::compare(format!("bound:{bound}"), value, fam.len()).params(bp));
    }
    if let Some(path) = out {
        fs::write(path, FamilyFile::from_family(&fam).to_json()).with_context(|| format!("writing {}", path.display()))?;
        r.push(Row::info("written", path.display()));
    }
    Ok(r)
}

pub fn family_validate(path: &Path) -> Result<Report> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let fam = FamilyFile::from_json(&text)?.to_family()?;
    let mut r = Report::new("family validate");
    r.push(Row::info("file", path.display()));
    family_rows(&mut r, &fam, false)?;
    Ok(r)
}

pub fn bound(id: Option<&str>, params: &Params) -> Result<Report> {
    let catalog = bound_catalog();
    let mut r = Report::new("bound");
    match id {
        None => {
            for b in catalog.iter() {
                r.push(Row::info(b.id(), b.summary()).params(b.params().join(",")));
            }
        }
        Some(id) => {
            let value = catalog.get(id)?.evaluate(params)?;
            r.push(Row::info(format!("bound:{id}"), value).params(params));
        }
    }
    Ok(r)
}

pub fn constructions() -> Report {
    let mut r = Report::new("family list");
    for c in construction_registry().iter() {
        r.push(Row::info(c.id(), c.summary()).params(c.params().join(",")));
    }
    r
}

pub fn instances() -> Report {
    let mut r = Report::new("search list");
    for i in instance_registry().iter() {
        r.push(Row::info(i.id(), i.summary()).params(i.params().join(",")));
    }
    r
}

/// Maps the short instance names to registry ids with their defaults.
pub fn resolve_instance(name: &str, params: &mut Params) -> Result<&'static str> {
    let default = |p: &mut Params, key: &str, v: u64| {
        if p.get(key).is_err() {
            p.set(key, v);
        }
    };
    let id = match name {
        "pg-lines" => {
            if params.ring_spec().is_err() {
                let q = params.get_or("q", 2);
                params.set_ring(format!("gf:q={q}").parse()?);
            }
            "subspaces"
        }
        "phg-lines" => "subspaces",
        "phg-avoid" | "tanaka" => "subspaces-avoiding",
        other => instance_registry().ids().into_iter().find(|&i| i == other).context(format!("unknown instance `{other}`"))?,
    };
    if id.starts_with("subspaces") {
        default(params, "k", 2);
        default(params, "t", 1);
    }
    Ok(id)
}

pub fn search(name: &str, mut params: Params, budget: Budget, log: Option<&Path>, witness: bool) -> Result<Report> {
    let id = resolve_instance(name, &mut params)?;
    let outcome = instance_registry().get(id)?.solve(&params, budget)?;
    if let Some(path) = log {
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .with_context(|| format!("opening {}", path.display()))?;
        writeln!(f, "{}", outcome.to_json_line())?;
    }
    let ring = params.ring_spec().map(|s| s.to_string()).unwrap_or_default();
    let mut r = Report::new("search");
    let row = |check: &str, v: String| Row::info(check, v).ring(&ring).params(&params);
    r.push(row("instance", outcome.instance.clone()));
    r.push(row("hash", outcome.hash.clone()));
    r.push(row("vertices", outcome.vertices.to_string()));
    r.push(row("size", outcome.size.to_string()));
    r.push(row("status", if outcome.status == Status::Exact { "exact" } else { "bound-only" }.into()));
    r.push(row("upper-bound", outcome.upper_bound.to_string()));
    r.push(row("nodes", outcome.nodes.to_string()));
    for c in &outcome.comparisons {
        if c.name.starts_with("bound:") && outcome.status == Status::Exact {
            r.push(Row::compare(&c.name, &c.value, outcome.size).ring(&ring).params(&params));
        } else {
            r.push(Row { formula: Some(c.value.clone()), ..row(&c.name, outcome.size.to_string()) });
        }
    }
    if witness {
        for (i, w) in outcome.witness.iter().enumerate() {
            r.push(row(&format!("witness[{i}]"), w.clone()));
        }
    }
    if outcome.status != Status::Exact {
        r.budget_exhausted();
    }
    Ok(r)
}

/// Reproduces the reference values at the smallest parameters.
pub fn report(budget: Budget) -> Result<Report> {
    let mut r = Report::new("report");
    let z4: RingSpec = "gr:p=2,r=1".parse()?;
    let d2: RingSpec = "dual:q=2,s=0".parse()?;
    let absorb = |sub: Report, prefix: &str, r: &mut Report| {
        for mut row in sub.rows {
            row.check = format!("{prefix}{}", row.check);
            r.push(row);
        }
        if sub.status == crate::report::Status::Budget {
            r.budget_exhausted();
        }
    };
    absorb(count(&z4, 4, None, "2", true)?, "count:", &mut r);
    absorb(count(&d2, 4, None, "2^2", true)?, "count:", &mut r);
    absorb(factor_check(&z4, 4, &[])?, "factor:", &mut r);
    let p = |s: &str| -> Result<Params> { Ok(s.parse()?) };
    for id in ["canonical", "codual", "tanaka-through", "tanaka-inside", "pencil-stripes", "stripes", "stripes-hyperplane"] {
        let params = if id.contains("stripes") { p("ring=gr:p=2,r=1")? } else { p("ring=gr:p=2,r=1;n=4;k=2;t=1")? };
        let sub = family_build(id, &params, None)?;
        absorb(sub, &format!("{id}:"), &mut r);
    }
    for (name, params) in [
        ("pg-lines", "q=2;n=4"),
        ("phg-lines", "ring=gr:p=2,r=1;n=4;t=1"),
        ("phg-avoid", "ring=gr:p=2,r=1;n=4;k=2;t=1"),
        ("set-ekr", "n=7;k=3;t=1;non-star"),
        ("stripes", "ring=gr:p=2,r=1"),
    ] {
        let sub = search(name, p(params)?, budget, None, false)?;
        absorb(sub, &format!("search:{name}:"), &mut r);
    }
    Ok(r)
}
