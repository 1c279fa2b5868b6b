//! One function per subcommand. Each validates its inputs, computes, and
//! renders the whole output into a string before anything is written.

use cyclic_factor_core::arithmetic::{factorize, ExactInt};
use cyclic_factor_core::group::{
    coset_partition, cosets_repeat_cyclically, crt_residues, slice_coordinates, subgroup_decompose,
    CyclicGroup, ExtendedGroupSpec, GroupElement, SliceConvention,
};
use cyclic_factor_core::hidden_subgroup::{
    default_window, oracle_eval, residue_sequence, residue_spectrum, OracleSpec,
};
use cyclic_factor_core::representations::{
    project, project_via_primes, translation_phase_check, verify_great_orthogonality,
    GroupFunction, IrrepLabel,
};
use cyclic_factor_core::ring_salc::{
    analytic_modes, compare_with_fourier_modes, degeneracy_pattern, diagonalize, salc, RingSpec,
};
use cyclic_factor_core::shor_sim::{
    extract_period_detailed, measure_bottom, prepare_uniform, qft_distribution, run_factoring,
    sample_outcome, uniform_unit, FactorOptions, FactorReport, RegisterConfig, RegisterMode,
};
use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use serde_json::{json, Value};

use crate::args::{Format, Register};
use crate::format::{json_real, json_text, json_u128, opt, real, Table, Text};
use crate::Failure;

/// Rendered output plus whether the command's own checks passed.
pub struct Rendered {
    pub body: String,
    /// Set when output was produced but the command still failed.
    pub failure: Option<String>,
}

impl Rendered {
    fn ok(body: String) -> Self {
        Rendered {
            body,
            failure: None,
        }
    }

    fn check(body: String, passed: bool, what: &str) -> Self {
        Rendered {
            body,
            failure: (!passed).then(|| format!("{what} failed")),
        }
    }
}

type Outcome = Result<Rendered, Failure>;

fn limit(flag: &str, value: u64, max: u64) -> Result<(), Failure> {
    if value > max {
        return Err(Failure::Domain(format!(
            "{flag} {value} exceeds the limit {max} for this subcommand"
        )));
    }
    Ok(())
}

fn mode_of(register: Register, m: Option<u64>) -> Result<RegisterMode, Failure> {
    match (register, m) {
        (Register::Paper, Some(_)) => Err(Failure::Usage(
            "--m cannot be combined with --register paper (the register size is aN)".into(),
        )),
        (Register::Pow2, Some(m)) if !m.is_power_of_two() || m < 2 => Err(Failure::Usage(format!(
            "--m {m} must be a power of two of at least 2"
        ))),
        (Register::Pow2, _) => Ok(RegisterMode::PowerOfTwo),
        (Register::Paper, None) => Ok(RegisterMode::PaperOrder),
    }
}

fn complex_pair(z: Complex64) -> Value {
    json!([json_real(z.re), json_real(z.im)])
}

const CONVENTION: &str =
    "element indices are 0-based; C_N^0 = E is the identity (C_N^N in 1-based form)";

pub fn factor(
    n: u64,
    a: Option<u64>,
    register: Register,
    m: Option<u64>,
    max_attempts: u32,
    seed: u64,
    format: Format,
) -> Outcome {
    let mode = mode_of(register, m)?;
    if max_attempts == 0 {
        return Err(Failure::Usage("--max-attempts must be at least 1".into()));
    }
    let options = FactorOptions {
        a,
        mode,
        register_size: m,
        max_attempts,
        seed,
    };
    let report = run_factoring(n, &options)?;
    let body = match format {
        Format::Json => json_text(&factor_json(&report)),
        Format::Csv => factor_samples(&report).csv(),
        Format::Table => {
            let mut t = Text::new();
            t.field("n", report.n)
                .field("a", opt(report.a))
                .field("mode", report.mode.name())
                .field("register_size", opt(report.register_size))
                .field("order", opt(report.order))
                .field(
                    "factors",
                    report
                        .factors
                        .map_or("-".into(), |(p, q)| format!("{p} x {q}")),
                )
                .field("attempts", report.attempts)
                .field("seed", report.seed);
            if !report.samples.is_empty() {
                t.table(&factor_samples(&report));
            }
            t.finish()
        }
    };
    let failure = report
        .factors
        .is_none()
        .then(|| format!("no factors found after {} attempts", report.attempts));
    Ok(Rendered { body, failure })
}

/// Stable-key-order JSON form of a [`FactorReport`].
pub fn factor_json(report: &FactorReport) -> Value {
    let samples: Vec<Value> = report
        .samples
        .iter()
        .map(|s| {
            json!({
                "outcome": s.outcome,
                "candidate_r": s.candidate_r,
                "status": s.status.name(),
            })
        })
        .collect();
    json!({
        "n": report.n,
        "a": report.a,
        "mode": report.mode.name(),
        "register_size": report.register_size,
        "order": report.order,
        "samples": samples,
        "factors": report.factors.map(|(p, q)| json!([p, q])),
        "attempts": report.attempts,
        "seed": report.seed,
    })
}

fn factor_samples(report: &FactorReport) -> Table {
    let mut t = Table::new([
        "a",
        "residue",
        "outcome",
        "convergents",
        "candidate_r",
        "status",
    ]);
    for s in &report.samples {
        let convergents: Vec<String> = s
            .convergents
            .iter()
            .map(|c| format!("{}/{}", c.numerator, c.denominator))
            .collect();
        t.push([
            s.a.to_string(),
            s.residue.to_string(),
            s.outcome.to_string(),
            convergents.join(" "),
            opt(s.candidate_r),
            s.status.name().to_string(),
        ]);
    }
    t
}

pub fn order(n: u64, a: u64, format: Format) -> Outcome {
    let spec = OracleSpec::new(n, a)?;
    let r = spec.order()?;
    let residues = residue_sequence(&spec, r);
    let mut table = Table::new(["x", "residue"]);
    for (x, v) in residues.iter().enumerate() {
        table.push([x.to_string(), v.to_string()]);
    }
    Ok(Rendered::ok(match format {
        Format::Json => json_text(&json!({"n": n, "a": a, "order": r, "residues": residues})),
        Format::Csv => table.csv(),
        Format::Table => Text::new()
            .field("n", n)
            .field("a", a)
            .field("order", r)
            .table(&table)
            .finish(),
    }))
}

fn power_name(n: u64, k: u64) -> String {
    if k == 0 {
        "E".into()
    } else {
        format!("C_{n}^{k}")
    }
}

pub fn crt(n: u64, format: Format) -> Outcome {
    limit("--n", n, 1 << 16)?;
    let group = CyclicGroup::new(n)?;
    if n < 2 {
        return Err(Failure::Domain("--n must be at least 2".into()));
    }
    let fac = factorize(n as u128)?;
    let moduli: Vec<u64> = fac.prime_powers().into_iter().map(|q| q as u64).collect();
    let primes: Vec<u64> = fac.primes().map(|p| p as u64).collect();
    let square_free = fac.is_square_free();

    let mut header: Vec<String> = vec!["k_zero_based".into()];
    header.extend(moduli.iter().map(|q| format!("mod_{q}")));
    if square_free {
        header.extend(primes.iter().map(|b| format!("k_{b}")));
        header.push("identity".into());
    }
    let mut table = Table::new(header);
    let mut rows = Vec::new();
    for g in group.elements() {
        let k = g.index();
        let residues = crt_residues(g)?;
        let mut cells: Vec<String> = vec![k.to_string()];
        cells.extend(residues.iter().map(u64::to_string));
        let (coords, identity) = if square_free {
            let coords = subgroup_decompose(g)?;
            let terms: Vec<String> = primes
                .iter()
                .zip(&coords)
                .filter(|(_, &c)| c != 0)
                .map(|(&b, &c)| power_name(n, (n / b) * c % n))
                .collect();
            let lhs = if terms.is_empty() {
                "E".to_string()
            } else {
                terms.join(" ")
            };
            let identity = format!("{lhs} = {}", power_name(n, k));
            cells.extend(coords.iter().map(u64::to_string));
            cells.push(identity.clone());
            (Some(coords), Some(identity))
        } else {
            (None, None)
        };
        table.push(cells);
        rows.push(json!({
            "k": k,
            "residues": residues,
            "coordinates": coords,
            "identity": identity,
        }));
    }
    Ok(Rendered::ok(match format {
        Format::Json => json_text(&json!({
            "n": n,
            "convention": CONVENTION,
            "moduli": moduli,
            "subgroup_generators": if square_free {
                json!(primes.iter().map(|b| n / b).collect::<Vec<_>>())
            } else {
                Value::Null
            },
            "rows": rows,
        })),
        Format::Csv => table.csv(),
        Format::Table => {
            let mut t = Text::new();
            t.field("n", n).line(&format!("convention: {CONVENTION}"));
            if square_free {
                let gens: Vec<String> = primes
                    .iter()
                    .map(|b| format!("{} (order {b})", power_name(n, n / b)))
                    .collect();
                t.field("subgroup generators", gens.join(", "));
            } else {
                t.line("n is not square-free: subgroup decomposition omitted");
            }
            t.table(&table).finish()
        }
    }))
}

struct Partition {
    label: String,
    generator: GroupElement,
    repeats: bool,
    cosets: Vec<(u64, Vec<u64>)>,
}

pub fn cosets(n: u64, a: Option<u64>, format: Format) -> Outcome {
    let (group, subgroups) = match a {
        Some(a) => {
            let spec = ExtendedGroupSpec::new(n, a)?;
            limit("aN", spec.order(), 1 << 14)?;
            (
                spec.group(),
                vec![
                    (format!("G^{a}"), spec.g_a_generator()),
                    (format!("G^{n}"), spec.g_n_generator()),
                ],
            )
        }
        None => {
            limit("--n", n, 1 << 14)?;
            if n < 2 {
                return Err(Failure::Domain("--n must be at least 2".into()));
            }
            let group = CyclicGroup::new(n)?;
            let subgroups = factorize(n as u128)?
                .primes()
                .map(|b| (format!("G^{b}"), group.element_mod(n / b as u64)))
                .collect();
            (group, subgroups)
        }
    };
    let mut partitions = Vec::new();
    for (label, generator) in subgroups {
        let cosets = coset_partition(group, generator)?;
        let repeats = cosets_repeat_cyclically(&cosets)?;
        partitions.push(Partition {
            label,
            generator,
            repeats,
            cosets: cosets
                .iter()
                .map(|c| {
                    (
                        c.representative.index(),
                        c.sorted_members().iter().map(GroupElement::index).collect(),
                    )
                })
                .collect(),
        });
    }

    let mut table = Table::new(["subgroup", "generator", "representative", "members"]);
    for p in &partitions {
        for (rep, members) in &p.cosets {
            let members: Vec<String> = members.iter().map(u64::to_string).collect();
            table.push([
                p.label.clone(),
                p.generator.index().to_string(),
                rep.to_string(),
                members.join(" "),
            ]);
        }
    }
    let all_repeat = partitions.iter().all(|p| p.repeats);
    let body = match format {
        Format::Json => json_text(&json!({
            "order": group.order(),
            "convention": CONVENTION,
            "partitions": partitions.iter().map(|p| json!({
                "subgroup": p.label,
                "generator": p.generator.index(),
                "subgroup_order": p.generator.element_order(),
                "cyclic_repetition": p.repeats,
                "cosets": p.cosets.iter().map(|(rep, members)| json!({
                    "representative": rep,
                    "members": members,
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => table.csv(),
        Format::Table => {
            let mut t = Text::new();
            t.field("group order", group.order())
                .line(&format!("convention: {CONVENTION}"));
            for p in &partitions {
                t.field(
                    &format!("{} (generator {})", p.label, p.generator.index()),
                    format!(
                        "{} cosets of size {}, cyclic repetition {}",
                        p.cosets.len(),
                        p.generator.element_order(),
                        if p.repeats { "holds" } else { "fails" }
                    ),
                );
            }
            t.table(&table).finish()
        }
    };
    Ok(Rendered::check(body, all_repeat, "coset repetition check"))
}

/// Function on `Z_m` with real and imaginary parts uniform in `[-1, 1)`.
pub fn random_function(m: u64, seed: u64) -> GroupFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..m)
        .map(|_| {
            let re = 2.0 * uniform_unit(&mut rng) - 1.0;
            let im = 2.0 * uniform_unit(&mut rng) - 1.0;
            Complex64::new(re, im)
        })
        .collect();
    GroupFunction::new(values).expect("finite non-empty samples")
}

pub fn project_cmd(n: u64, j: u64, tol: f64, seed: u64, format: Format) -> Outcome {
    limit("--n", n, 4096)?;
    let label = IrrepLabel::new(j, n)?;
    let f = random_function(n, seed);
    let p = project(label, &f)?;
    let idempotence = project(label, &p)?.max_abs_diff(&p)?;
    let phase = translation_phase_check(label, &f, tol)?;
    let fac = factorize(n as u128)?;
    let via_primes = if n >= 2 && fac.is_square_free() {
        Some(project_via_primes(label, &f, &fac)?.max_abs_diff(&p)?)
    } else {
        None
    };
    let passed = idempotence < tol && phase.passed && via_primes.is_none_or(|d| d < tol);

    let mut table = Table::new(["k", "f_re", "f_im", "proj_re", "proj_im"]);
    for (k, (x, y)) in f.values().iter().zip(p.values()).enumerate() {
        table.push([
            k.to_string(),
            real(x.re),
            real(x.im),
            real(y.re),
            real(y.im),
        ]);
    }
    let body = match format {
        Format::Json => json_text(&json!({
            "order": n,
            "j": j,
            "seed": seed,
            "tolerance": json_real(tol),
            "checks": {
                "idempotence": json_real(idempotence),
                "translation_phase": json_real(phase.max_deviation),
                "via_primes": via_primes.map(json_real),
                "passed": passed,
            },
            "function": f.values().iter().map(|&z| complex_pair(z)).collect::<Vec<_>>(),
            "projection": p.values().iter().map(|&z| complex_pair(z)).collect::<Vec<_>>(),
        })),
        Format::Csv => table.csv(),
        Format::Table => Text::new()
            .field("order", n)
            .field("j", j)
            .field("seed", seed)
            .field("idempotence deviation", real(idempotence))
            .field("translation phase deviation", real(phase.max_deviation))
            .field(
                "prime-factor path deviation",
                via_primes.map_or("-".into(), real),
            )
            .field("tolerance", real(tol))
            .field("passed", passed)
            .table(&table)
            .finish(),
    };
    Ok(Rendered::check(body, passed, "projection checks"))
}

pub fn salc_cmd(n: u64, j: Option<u64>, format: Format) -> Outcome {
    limit("--n", n, 512)?;
    if n < 2 {
        return Err(Failure::Domain("a ring needs at least 2 sites".into()));
    }
    let labels: Vec<IrrepLabel> = match j {
        Some(j) => vec![IrrepLabel::new(j, n)?],
        None => IrrepLabel::all(n).collect(),
    };
    let ao = GroupFunction::delta(n, 0)?;
    let mut orbitals = Vec::new();
    for label in labels {
        orbitals.push((label.j(), salc(label, &ao)?));
    }
    let mut table = Table::new(["j", "site", "re", "im"]);
    for (j, orb) in &orbitals {
        for (site, z) in orb.coefficients.iter().enumerate() {
            table.push([j.to_string(), site.to_string(), real(z.re), real(z.im)]);
        }
    }
    Ok(Rendered::ok(match format {
        Format::Json => json_text(&json!({
            "n_sites": n,
            "ao_profile": "delta at site 0",
            "orbitals": orbitals.iter().map(|(j, orb)| json!({
                "j": j,
                "norm": json_real(orb.norm),
                "is_zero": orb.is_zero,
                "coefficients": orb.coefficients.iter().map(|&z| complex_pair(z)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => table.csv(),
        Format::Table => Text::new()
            .field("n_sites", n)
            .field("ao profile", "delta at site 0")
            .table(&table)
            .finish(),
    }))
}

pub fn ring(n: u64, tol: f64, format: Format) -> Outcome {
    limit("--n", n, 1024)?;
    let spec = RingSpec::huckel(n as usize)?;
    let (eigenvalues, _) = diagonalize(&spec);
    let modes = analytic_modes(&spec);
    let classes = degeneracy_pattern(n as usize);
    let (energy_err, projector_err) = compare_with_fourier_modes(&spec, tol);
    let passed = energy_err < tol && projector_err < tol;

    let mut csv = Table::new(["j", "energy", "site", "re", "im"]);
    for mode in &modes {
        for (site, z) in mode.orbital.coefficients.iter().enumerate() {
            csv.push([
                mode.j.to_string(),
                real(mode.energy),
                site.to_string(),
                real(z.re),
                real(z.im),
            ]);
        }
    }
    let body = match format {
        Format::Json => json_text(&json!({
            "n_sites": n,
            "onsite": json_real(spec.onsite()),
            "hopping": json_real(spec.hopping()),
            "eigenvalues": eigenvalues.iter().map(|&e| json_real(e)).collect::<Vec<_>>(),
            "modes": modes.iter().map(|m| json!({
                "j": m.j,
                "energy": json_real(m.energy),
                "coefficients": m.orbital.coefficients.iter().map(|&z| complex_pair(z)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "degeneracy": classes,
            "energy_error": json_real(energy_err),
            "projector_error": json_real(projector_err),
            "tolerance": json_real(tol),
            "passed": passed,
        })),
        Format::Csv => csv.csv(),
        Format::Table => {
            let mut table = Table::new(["class", "j", "energy"]);
            for (c, class) in classes.iter().enumerate() {
                let js: Vec<String> = class.iter().map(usize::to_string).collect();
                table.push([c.to_string(), js.join(" "), real(modes[class[0]].energy)]);
            }
            let eig: Vec<String> = eigenvalues.iter().map(|&e| real(e)).collect();
            Text::new()
                .field("n_sites", n)
                .field("onsite", real(spec.onsite()))
                .field("hopping", real(spec.hopping()))
                .field("eigenvalues", eig.join(" "))
                .field("energy error", real(energy_err))
                .field("projector error", real(projector_err))
                .field("tolerance", real(tol))
                .field("passed", passed)
                .table(&table)
                .finish()
        }
    };
    Ok(Rendered::check(body, passed, "ring comparison"))
}

pub fn oracle(n: u64, a: u64, len: u64, format: Format) -> Outcome {
    if len == 0 {
        return Err(Failure::Usage("--len must be at least 1".into()));
    }
    let spec = OracleSpec::new(n, a)?;
    ExactInt::from(a).checked_pow(len - 1)?;
    let mut table = Table::new(["x", "i_prime", "j_prime", "alpha", "beta"]);
    let mut rows = Vec::new();
    for x in 0..len {
        let label = oracle_eval(&spec, x)?;
        let (i, j) = slice_coordinates(x, spec.extended(), SliceConvention::ByN);
        table.push([
            x.to_string(),
            i.to_string(),
            j.to_string(),
            label.alpha.to_string(),
            label.beta.to_string(),
        ]);
        rows.push(json!({
            "x": x,
            "i_prime": i,
            "j_prime": j,
            "alpha": json_u128(label.alpha.get()),
            "beta": json_u128(label.beta.get()),
        }));
    }
    Ok(Rendered::ok(match format {
        Format::Json => json_text(&json!({
            "n": n,
            "a": a,
            "slice_convention": "x = i' + j' a",
            "rows": rows,
        })),
        Format::Csv => table.csv(),
        Format::Table => Text::new()
            .field("n", n)
            .field("a", a)
            .line("a^x = alpha N + beta, slice coordinates x = i' + j' a")
            .table(&table)
            .finish(),
    }))
}

/// Entries below this are left out of the `spectrum` table view.
const SPECTRUM_TABLE_FLOOR: f64 = 1e-12;

pub fn spectrum(n: u64, a: u64, len: Option<u64>, w: u64, format: Format) -> Outcome {
    let spec = OracleSpec::new(n, a)?;
    let len = len.unwrap_or_else(|| default_window(&spec));
    if len == 0 {
        return Err(Failure::Usage("--len must be at least 1".into()));
    }
    limit("--len", len, 1 << 16)?;
    let values = residue_spectrum(&spec, len, w)?;
    let power: Vec<f64> = values.iter().map(|z| z.norm_sqr()).collect();
    let mut csv = Table::new(["index", "magnitude_squared"]);
    for (k, p) in power.iter().enumerate() {
        csv.push([k.to_string(), real(*p)]);
    }
    Ok(Rendered::ok(match format {
        Format::Json => json_text(&json!({
            "n": n,
            "a": a,
            "length": len,
            "residue": w,
            "magnitude_squared": power.iter().map(|&p| json_real(p)).collect::<Vec<_>>(),
        })),
        Format::Csv => csv.csv(),
        Format::Table => {
            let mut table = Table::new(["index", "magnitude_squared"]);
            for (k, p) in power.iter().enumerate() {
                if *p >= SPECTRUM_TABLE_FLOOR {
                    table.push([k.to_string(), real(*p)]);
                }
            }
            Text::new()
                .field("n", n)
                .field("a", a)
                .field("length", len)
                .field("residue", w)
                .line(&format!(
                    "entries below {} omitted",
                    real(SPECTRUM_TABLE_FLOOR)
                ))
                .table(&table)
                .finish()
        }
    }))
}

/// Rows shown by the `simulate` table view.
const SIMULATE_TABLE_ROWS: usize = 32;

pub fn simulate(
    n: u64,
    a: u64,
    register: Register,
    m: Option<u64>,
    w: Option<u64>,
    seed: u64,
    format: Format,
) -> Outcome {
    let mode = mode_of(register, m)?;
    let config = RegisterConfig::new(n, a, mode, m)?;
    let state = prepare_uniform(config)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let collapsed = measure_bottom(&state, w, &mut rng)?;
    let dist = qft_distribution(&collapsed);
    let outcome = sample_outcome(&dist, &mut rng);
    let estimate = extract_period_detailed(outcome, config.size(), n, a)?;
    let probs = dist.probabilities();
    Ok(Rendered::ok(match format {
        Format::Json => json_text(&json!({
            "n": n,
            "a": a,
            "mode": mode.name(),
            "register_size": config.size(),
            "order": state.period(),
            "residue": collapsed.residue,
            "sample": {"outcome": outcome, "candidate_r": estimate.candidate},
            "probabilities": probs.iter().map(|&p| json_real(p)).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut t = Table::new(["v", "probability"]);
            for (v, p) in probs.iter().enumerate() {
                t.push([v.to_string(), real(*p)]);
            }
            t.csv()
        }
        Format::Table => {
            let shown = (2 * state.period() as usize).clamp(1, SIMULATE_TABLE_ROWS);
            let mut t = Table::new(["v", "probability"]);
            for v in dist.most_probable(shown) {
                t.push([v.to_string(), real(probs[v as usize])]);
            }
            Text::new()
                .field("n", n)
                .field("a", a)
                .field("mode", mode.name())
                .field("register_size", config.size())
                .field("order", state.period())
                .field("residue", collapsed.residue)
                .field("sampled outcome", outcome)
                .field("candidate_r", opt(estimate.candidate))
                .line(&format!("{shown} most probable outcomes:"))
                .table(&t)
                .finish()
        }
    }))
}

pub fn got_check(n: u64, tol: f64, format: Format) -> Outcome {
    limit("--n", n, 512)?;
    let report = verify_great_orthogonality(n, tol)?;
    let mut table = Table::new(["order", "max_deviation", "tolerance", "passed"]);
    table.push([
        n.to_string(),
        real(report.max_deviation),
        real(tol),
        report.passed.to_string(),
    ]);
    let body = match format {
        Format::Json => json_text(&json!({
            "order": n,
            "max_deviation": json_real(report.max_deviation),
            "tolerance": json_real(tol),
            "passed": report.passed,
        })),
        Format::Csv => table.csv(),
        Format::Table => Text::new()
            .field("order", n)
            .field("max deviation", real(report.max_deviation))
            .field("tolerance", real(tol))
            .field("passed", report.passed)
            .finish(),
    };
    Ok(Rendered::check(body, report.passed, "orthogonality check"))
}
