//! Command-line front end: parse signatures, enumerate standard doubles,
//! build covers and towers, tabulate real-curve types, and replay the
//! library's reference numbers end to end.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use necdouble_core::{
    build_tower, canonical_presentation, classify_standard_doubles, cover_report, dd_type,
    lifting_kernel_type, membership_check, named_group, parse_top_type, psi_image,
    real_curve_types, standard_epis_c2, subgroup_signature, CoverSpec, Error, GroupHom,
    NecSignature, RealCurveType, Sign, TopType,
};

#[derive(Parser)]
#[command(
    name = "necdouble",
    version,
    about = "Doubles of compact Klein surfaces: signatures, covers, and the double-of-doubles tower"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a signature (or compact type) and report its invariants.
    Parse {
        /// Signature like "(2;-;[-];{(-)^3})" or type like "g=2,-,k=3".
        input: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List the standard order-two quotient maps of a bordered type.
    Epis {
        /// Compact type, e.g. "(2;-;3)"; omit when using --grid.
        input: Option<String>,
        /// Tabulate counts over 1..=gmax x 1..=kmax, e.g. "6,6".
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Classify the standard doubles of a bordered type.
    Doubles {
        /// Signature or compact type of the base surface.
        input: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build the Klein-four tower over a non-orientable bordered type.
    Tower {
        /// Signature or compact type of the base surface.
        input: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compute the cover attached to a quotient map and a subgroup.
    Cover {
        /// Base signature, e.g. "(1;+;[3];{(3)})".
        signature: String,
        /// Generator images, e.g. "x->st,e->ts,a->1,b->1,c1.0->s,c1.1->tst".
        #[arg(long)]
        hom: String,
        /// Target group: c<N>, d<N>, klein4, or trivial.
        #[arg(long)]
        group: String,
        /// Comma-separated subgroup generators by name, e.g. "s" or "s,t".
        #[arg(long)]
        subgroup: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Tabulate non-orientable real-curve types of an algebraic genus.
    Moduli {
        #[arg(long)]
        genus: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Replay the reference computations and report pass/fail per case.
    VerifyPaper,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_syntax() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

/// Accept either a full signature or the compact type notation.
fn signature_arg(input: &str) -> Result<NecSignature, Error> {
    if input.contains('[') {
        NecSignature::parse(input)
    } else {
        Ok(parse_top_type(input)?.signature())
    }
}

/// Accept either notation, but require a surface type.
fn type_arg(input: &str) -> Result<TopType, Error> {
    if input.contains('[') {
        let sig = NecSignature::parse(input)?;
        sig.as_top_type().ok_or_else(|| Error::domain(format!("{sig} is not a surface signature")))
    } else {
        parse_top_type(input)
    }
}

fn rational_str(r: necdouble_core::Rational) -> String {
    if *r.denom() == 1 {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Internal(format!("serialization failed: {e}")))?;
    println!("{text}");
    Ok(())
}

fn run(cmd: Cmd) -> Result<(), Error> {
    match cmd {
        Cmd::Parse { input, format } => cmd_parse(&input, format),
        Cmd::Epis { input, grid, format } => cmd_epis(input.as_deref(), grid.as_deref(), format),
        Cmd::Doubles { input, format } => cmd_doubles(&input, format),
        Cmd::Tower { input, format } => cmd_tower(&input, format),
        Cmd::Cover { signature, hom, group, subgroup, format } => {
            cmd_cover(&signature, &hom, &group, subgroup.as_deref(), format)
        }
        Cmd::Moduli { genus, format } => cmd_moduli(genus, format),
        Cmd::VerifyPaper => cmd_verify(),
    }
}

#[derive(Serialize)]
struct ParseJson {
    signature: String,
    sign: String,
    genus: u32,
    proper_periods: Vec<u32>,
    period_cycles: Vec<Vec<u32>>,
    euler_char_orb: String,
    surface: bool,
    top_type: Option<String>,
    algebraic_genus: Option<i64>,
    generators: Vec<String>,
    relator_count: usize,
}

fn cmd_parse(input: &str, format: Format) -> Result<(), Error> {
    let sig = signature_arg(input)?;
    let pres = canonical_presentation(&sig);
    let top = sig.as_top_type();
    let out = ParseJson {
        signature: sig.to_string(),
        sign: if sig.sign() == Sign::Plus { "+".into() } else { "-".into() },
        genus: sig.genus(),
        proper_periods: sig.proper_periods().to_vec(),
        period_cycles: sig.period_cycles().to_vec(),
        euler_char_orb: rational_str(sig.euler_char_orb()),
        surface: sig.is_surface(),
        top_type: top.map(|t| t.to_string()),
        algebraic_genus: top.map(|t| t.algebraic_genus()),
        generators: pres.generators().iter().map(|g| g.name.clone()).collect(),
        relator_count: pres.relators().len(),
    };
    match format {
        Format::Json => print_json(&out),
        Format::Text => {
            println!("signature       {}", out.signature);
            println!("sign            {}", out.sign);
            println!("genus           {}", out.genus);
            println!("proper periods  {:?}", out.proper_periods);
            println!("period cycles   {:?}", out.period_cycles);
            println!("chi_orb         {}", out.euler_char_orb);
            match top {
                Some(t) => {
                    println!("surface         yes: {} (algebraic genus {})", t, t.algebraic_genus())
                }
                None => println!("surface         no (proper orbifold)"),
            }
            println!("generators      {}", out.generators.join(" "));
            println!("relators        {}", out.relator_count);
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct EpiRowJson {
    row: u8,
    assignment: String,
}

fn cmd_epis(input: Option<&str>, grid: Option<&str>, format: Format) -> Result<(), Error> {
    match (input, grid) {
        (_, Some(grid)) => {
            let (gmax, kmax) = parse_grid(grid)?;
            let mut rows = Vec::new();
            for g in 1..=gmax {
                for k in 1..=kmax {
                    let t = TopType::new(g, false, k)?;
                    let n = standard_epis_c2(&t)?.len();
                    rows.push((t.to_string(), n));
                }
            }
            match format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct CountJson {
                        base: String,
                        count: usize,
                    }
                    let out: Vec<CountJson> =
                        rows.into_iter().map(|(base, count)| CountJson { base, count }).collect();
                    print_json(&out)
                }
                Format::Text => {
                    for (base, count) in rows {
                        println!("{base:<12} {count}");
                    }
                    Ok(())
                }
            }
        }
        (Some(input), None) => {
            let t = type_arg(input)?;
            let rows: Vec<EpiRowJson> = standard_epis_c2(&t)?
                .into_iter()
                .map(|a| EpiRowJson { row: a.row, assignment: a.describe() })
                .collect();
            match format {
                Format::Json => print_json(&rows),
                Format::Text => {
                    println!("row  assignment");
                    for r in &rows {
                        println!("{:<4} {}", r.row, r.assignment);
                    }
                    Ok(())
                }
            }
        }
        (None, None) => Err(Error::domain("pass a type or --grid gmax,kmax")),
    }
}

fn parse_grid(text: &str) -> Result<(u32, u32), Error> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(Error::domain(format!("bad grid `{text}` (expected gmax,kmax)")));
    }
    let g =
        parts[0].parse().map_err(|_| Error::domain(format!("bad grid bound `{}`", parts[0])))?;
    let k =
        parts[1].parse().map_err(|_| Error::domain(format!("bad grid bound `{}`", parts[1])))?;
    Ok((g, k))
}

#[derive(Serialize)]
struct DoubleRowJson {
    row: u8,
    assignment: String,
    boundary: u32,
    orientable: bool,
    genus: u32,
    label: String,
}

fn cmd_doubles(input: &str, format: Format) -> Result<(), Error> {
    let t = type_arg(input)?;
    let records = classify_standard_doubles(&t)?;
    let rows: Vec<DoubleRowJson> = records
        .iter()
        .map(|r| DoubleRowJson {
            row: r.row,
            assignment: r.assignment.describe(),
            boundary: r.boundary,
            orientable: r.orientable,
            genus: r.genus,
            label: r.label.name().to_string(),
        })
        .collect();
    match format {
        Format::Json => print_json(&rows),
        Format::Text => {
            println!("row  assignment       B  orientability    genus  label");
            for r in &rows {
                println!(
                    "{:<4} {:<16} {:<2} {:<16} {:<6} {}",
                    r.row,
                    r.assignment,
                    r.boundary,
                    if r.orientable { "orientable" } else { "non-orientable" },
                    r.genus,
                    r.label
                );
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct TowerQuotientJson {
    involution: String,
    label: String,
    top_type: String,
    fix_circles: u32,
}

#[derive(Serialize)]
struct TowerJson {
    base: String,
    dx: String,
    quotients: Vec<TowerQuotientJson>,
    fix_s_separating: bool,
}

/// Render the five-line quotient diamond with `top` above, `bottom`
/// below, and three middle labels.
fn diamond(top: &str, left: &str, mid: &str, right: &str, bottom: &str) -> String {
    let gap = "      ";
    let middle = format!("{left}{gap}{mid}{gap}{right}");
    let cl = left.len() / 2;
    let cm = left.len() + gap.len() + mid.len() / 2;
    let cr = left.len() + gap.len() + mid.len() + gap.len() + right.len() / 2;
    let place = |marks: &[(usize, char)]| {
        let width = marks.iter().map(|&(i, _)| i).max().unwrap_or(0) + 1;
        let mut line = vec![' '; width];
        for &(i, c) in marks {
            line[i] = c;
        }
        line.into_iter().collect::<String>()
    };
    let centered = |text: &str| {
        let start = cm.saturating_sub(text.len() / 2);
        format!("{}{}", " ".repeat(start), text)
    };
    let arms_down = place(&[((cl + cm) / 2, '/'), (cm, '|'), ((cm + cr) / 2, '\\')]);
    let arms_up = place(&[((cl + cm) / 2, '\\'), (cm, '|'), ((cm + cr) / 2, '/')]);
    format!("{}\n{}\n{}\n{}\n{}", centered(top), arms_down, middle, arms_up, centered(bottom))
}

fn cmd_tower(input: &str, format: Format) -> Result<(), Error> {
    let t = type_arg(input)?;
    let report = build_tower(&t)?;
    let out = TowerJson {
        base: report.base.to_string(),
        dx: report.dx.to_string(),
        quotients: report
            .quotients
            .iter()
            .map(|q| TowerQuotientJson {
                involution: q.involution.to_string(),
                label: q.label.name().to_string(),
                top_type: q.top_type.to_string(),
                fix_circles: q.fix_circles,
            })
            .collect(),
        fix_s_separating: report.fix_s_separating,
    };
    match format {
        Format::Json => print_json(&out),
        Format::Text => {
            let label = |name: &str| {
                let q = report.quotient(name).unwrap();
                format!("{} = {}", q.label.name(), q.top_type)
            };
            println!(
                "{}",
                diamond(
                    &format!("DX = {}", report.dx),
                    &label("st"),
                    &label("s"),
                    &label("t"),
                    &format!("X = {}", report.base),
                )
            );
            println!();
            println!("quotients by     st -> X+, s -> OX, t -> SX");
            let fc = |name: &str| report.quotient(name).unwrap().fix_circles;
            println!("fixed circles    s: {}, t: {}, st: {}", fc("s"), fc("t"), fc("st"));
            println!(
                "fixed curves of s separate DX: {}",
                if report.fix_s_separating { "yes" } else { "no" }
            );
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct CircleJson {
    corners: Vec<u32>,
}

#[derive(Serialize)]
struct CoverJson {
    index: usize,
    components: usize,
    euler_char: i64,
    orientable: bool,
    boundary: Vec<CircleJson>,
    cone_points: Vec<u32>,
    surface_group: bool,
    signature: Option<String>,
}

fn cmd_cover(
    signature: &str,
    hom: &str,
    group: &str,
    subgroup: Option<&str>,
    format: Format,
) -> Result<(), Error> {
    let sig = signature_arg(signature)?;
    let pres = canonical_presentation(&sig);
    let target = named_group(group)?;
    let hom = GroupHom::from_literal(pres, target, hom)?;
    hom.validate()?;
    let mut gens = Vec::new();
    if let Some(text) = subgroup {
        for name in text.split([',', ' ']).filter(|s| !s.is_empty()) {
            gens.push(hom.group().element_by_name(name)?);
        }
    }
    let spec = CoverSpec::new(hom, &gens)?;
    let report = cover_report(&spec)?;
    let out = CoverJson {
        index: report.index,
        components: report.components,
        euler_char: report.euler_char,
        orientable: report.orientable,
        boundary: report
            .boundary
            .iter()
            .map(|corners| CircleJson { corners: corners.clone() })
            .collect(),
        cone_points: report.cone_points.clone(),
        surface_group: report.is_surface_group,
        signature: report.signature.as_ref().map(|s| s.to_string()),
    };
    match format {
        Format::Json => print_json(&out),
        Format::Text => {
            match &report.signature {
                Some(sig) => println!("{sig}"),
                None => {
                    let parts: Vec<String> =
                        report.component_signatures.iter().map(|s| s.to_string()).collect();
                    println!("{}", parts.join("  "));
                }
            }
            println!(
                "index {}, components {}, euler characteristic {}, {}",
                report.index,
                report.components,
                report.euler_char,
                if report.orientable { "orientable" } else { "non-orientable" }
            );
            println!(
                "boundary circles {}, cone points {:?}, surface group: {}",
                report.boundary.len(),
                report.cone_points,
                if report.is_surface_group { "yes" } else { "no" }
            );
            for (i, corners) in report.boundary.iter().enumerate() {
                if !corners.is_empty() {
                    println!("  circle {}: corner orders {:?}", i + 1, corners);
                }
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct ModuliRowJson {
    top_type: String,
    psi_image: Option<String>,
    image_genus: Option<u32>,
    membership: Option<String>,
}

#[derive(Serialize)]
struct ModuliJson {
    algebraic_genus: i64,
    types: Vec<ModuliRowJson>,
}

fn cmd_moduli(genus: i64, format: Format) -> Result<(), Error> {
    let types = real_curve_types(genus)?;
    let mut rows = Vec::new();
    for t in &types {
        let (psi, membership) = if t.top_type().boundary() == 0 {
            (None, None)
        } else {
            let image = psi_image(t)?;
            membership_check(t)?;
            (Some(image), Some("pass".to_string()))
        };
        rows.push(ModuliRowJson {
            top_type: t.top_type().to_string(),
            psi_image: psi.map(|i| i.to_string()),
            image_genus: psi.map(|i| i.genus()),
            membership,
        });
    }
    let out = ModuliJson { algebraic_genus: genus, types: rows };
    match format {
        Format::Json => print_json(&out),
        Format::Text => {
            println!("type         psi image    image genus  membership");
            for r in &out.types {
                println!(
                    "{:<12} {:<12} {:<12} {}",
                    r.top_type,
                    r.psi_image.as_deref().unwrap_or("-"),
                    r.image_genus.map_or("-".to_string(), |g| g.to_string()),
                    r.membership.as_deref().unwrap_or("-"),
                );
            }
            Ok(())
        }
    }
}

type Case = (&'static str, fn() -> Result<(), String>);

fn check(ok: bool, msg: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

fn tt(genus: u32, orientable: bool, boundary: u32) -> TopType {
    TopType::new(genus, orientable, boundary).unwrap()
}

fn engine_kernel_type(hom: &GroupHom) -> Result<TopType, String> {
    let spec = CoverSpec::new(hom.clone(), &[]).map_err(|e| e.to_string())?;
    let sig = subgroup_signature(&spec).map_err(|e| e.to_string())?;
    sig.as_top_type().ok_or_else(|| format!("kernel is not a surface: {sig}"))
}

fn verify_cases() -> Vec<Case> {
    vec![
        ("standard double counts over the 6x6 grid: 7 for even boundary, 3 for odd", || {
            for g in 1..=6 {
                for k in 1..=6 {
                    let n = standard_epis_c2(&tt(g, false, k))
                        .map_err(|e| e.to_string())?
                        .len();
                    let want = if k % 2 == 0 { 7 } else { 3 };
                    check(n == want, &format!("(g,k)=({g},{k}): {n} != {want}"))?;
                }
            }
            Ok(())
        }),
        ("double invariants match the covering engine over the 5x5 grid", || {
            for g in 1..=5 {
                for k in 1..=5 {
                    let base = tt(g, false, k);
                    for record in classify_standard_doubles(&base).map_err(|e| e.to_string())? {
                        let hom = necdouble_core::assignment_to_hom(&base, &record.assignment)
                            .map_err(|e| e.to_string())?;
                        let engine = engine_kernel_type(&hom)?;
                        check(
                            engine == record.top_type(),
                            &format!("{base} row {}: engine {engine}", record.row),
                        )?;
                    }
                }
            }
            Ok(())
        }),
        ("closed-form doubles over the 5x5 grid", || {
            for g in 1u32..=5 {
                for k in 1u32..=5 {
                    let base = tt(g, false, k);
                    let complex = necdouble_core::complex_double(&base).map_err(|e| e.to_string())?;
                    check(complex == tt(g + k - 1, true, 0), &format!("complex of {base}"))?;
                    let (ox, _) = necdouble_core::orienting_double(&base).map_err(|e| e.to_string())?;
                    check(ox == tt(g - 1, true, 2 * k), &format!("orienting of {base}"))?;
                    let (sx, _) = necdouble_core::schottky_double(&base).map_err(|e| e.to_string())?;
                    check(sx == tt(2 * g + 2 * k - 2, false, 0), &format!("schottky of {base}"))?;
                    let dd = dd_type(&base).map_err(|e| e.to_string())?;
                    check(dd == tt(2 * g + 2 * k - 3, true, 0), &format!("dd of {base}"))?;
                }
            }
            Ok(())
        }),
        ("index-3 dihedral cover of (1;+;[3];{(3)}) is (7;-;[-];{(-)}) with chi -6", || {
            let sig = NecSignature::parse("(1;+;[3];{(3)})").map_err(|e| e.to_string())?;
            let pres = canonical_presentation(&sig);
            let d3 = named_group("d3").map_err(|e| e.to_string())?;
            let hom = GroupHom::from_literal(
                pres,
                d3,
                "x->st,e->ts,a->1,b->1,c1.0->s,c1.1->tst",
            )
            .map_err(|e| e.to_string())?;
            let s = hom.group().element_by_name("s").map_err(|e| e.to_string())?;
            let spec = CoverSpec::new(hom, &[s]).map_err(|e| e.to_string())?;
            let report = cover_report(&spec).map_err(|e| e.to_string())?;
            check(report.index == 3, "index")?;
            check(report.euler_char == -6, "euler characteristic")?;
            check(report.is_surface_group, "surface group")?;
            let got = report.signature.map(|s| s.to_string()).unwrap_or_default();
            check(got == "(7;-;[-];{(-)})", &format!("signature {got}"))
        }),
        ("Moebius band tower: torus on top, quotients (0;+;2), (2;-;0), (1;+;0)", || {
            let report = build_tower(&tt(1, false, 1)).map_err(|e| e.to_string())?;
            check(report.dx == tt(1, true, 0), "dx")?;
            check(report.quotient("s").unwrap().top_type == tt(0, true, 2), "s-quotient")?;
            check(report.quotient("t").unwrap().top_type == tt(2, false, 0), "t-quotient")?;
            check(report.quotient("st").unwrap().top_type == tt(1, true, 0), "st-quotient")
        }),
        ("twice-punctured projective plane: complex double (2;+;0), double of doubles (3;+;0), chi -4", || {
            let base = tt(1, false, 2);
            let complex = necdouble_core::complex_double(&base).map_err(|e| e.to_string())?;
            check(complex == tt(2, true, 0), "complex double")?;
            let dd = dd_type(&base).map_err(|e| e.to_string())?;
            check(dd == tt(3, true, 0), "double of doubles")?;
            check(dd.euler_char() == -4, "chi")?;
            check(dd.euler_char() == 4 * base.euler_char(), "chi ratio")
        }),
        ("fixed circles (2k, 0, 0) and separating s-curves over the 4x4 grid", || {
            for g in 1..=4 {
                for k in 1..=4 {
                    let report = build_tower(&tt(g, false, k)).map_err(|e| e.to_string())?;
                    check(
                        report.quotient("s").unwrap().fix_circles == 2 * k,
                        &format!("(g,k)=({g},{k}) s-circles"),
                    )?;
                    check(report.quotient("t").unwrap().fix_circles == 0, "t-circles")?;
                    check(report.quotient("st").unwrap().fix_circles == 0, "st-circles")?;
                    check(report.fix_s_separating, &format!("(g,k)=({g},{k}) separation"))?;
                }
            }
            Ok(())
        }),
        ("doubling map lands in genus 2p-1 for p <= 10", || {
            for p in 1..=10 {
                for t in real_curve_types(p).map_err(|e| e.to_string())? {
                    if t.top_type().boundary() == 0 {
                        continue;
                    }
                    let image = psi_image(&t).map_err(|e| e.to_string())?;
                    check(
                        i64::from(image.genus()) == 2 * p - 1,
                        &format!("{}: image {image}", t.top_type()),
                    )?;
                }
            }
            Ok(())
        }),
        ("torus as the image of the once-punctured projective plane", || {
            let t = RealCurveType::new(tt(1, false, 1)).map_err(|e| e.to_string())?;
            let image = psi_image(&t).map_err(|e| e.to_string())?;
            check(image == tt(1, true, 0), &format!("image {image}"))
        }),
        ("parity-extended kernels give the double of doubles (sweep)", || {
            for g in 1..=2 {
                for k in [2u32, 4] {
                    let base = tt(g, false, k);
                    for record in classify_standard_doubles(&base).map_err(|e| e.to_string())? {
                        if record.orientable || record.boundary == 0 {
                            continue;
                        }
                        let hom = necdouble_core::assignment_to_hom(&base, &record.assignment)
                            .map_err(|e| e.to_string())?;
                        let (x, dx) = lifting_kernel_type(&hom).map_err(|e| e.to_string())?;
                        let want = dd_type(&x).map_err(|e| e.to_string())?;
                        check(dx == want, &format!("{base} row {}: {dx} != {want}", record.row))?;
                    }
                }
            }
            Ok(())
        }),
    ]
}

fn cmd_verify() -> Result<(), Error> {
    let cases = verify_cases();
    let total = cases.len();
    let mut failed = 0usize;
    for (label, case) in cases {
        match case() {
            Ok(()) => println!("ok    {label}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {label}: {msg}");
            }
        }
    }
    if failed == 0 {
        println!("all {total} cases pass");
        Ok(())
    } else {
        Err(Error::domain(format!("{failed} of {total} cases failed")))
    }
}
