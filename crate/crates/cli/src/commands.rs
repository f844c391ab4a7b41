use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use soergel_core::bsmod::Context;
use soergel_core::hecke::{graded_rank, verify_z_decomposition};
use soergel_core::lightleaves::{build_tree, graded_census, hom_basis, light_leaves, render_bits, render_tree};
use soergel_core::verify::{self, Check};
use soergel_core::{CartanRealization, HeckeElement, Monomial, Order, Polynomial, Scalar, Word};

use crate::config::Config;
use crate::output;

/// What a command produced: both renderings and whether every check held.
pub struct Report {
    pub human: String,
    pub json: Value,
    pub passed: bool,
}

fn superscript(n: &str) -> String {
    n.chars()
        .map(|c| match c {
            '0' => '⁰',
            '1' => '¹',
            '2' => '²',
            '3' => '³',
            '4' => '⁴',
            '5' => '⁵',
            '6' => '⁶',
            '7' => '⁷',
            '8' => '⁸',
            _ => '⁹',
        })
        .collect()
}

fn name(cfg: &Config, w: &Word) -> String {
    if w.is_empty() {
        "R".into()
    } else {
        w.render(Some(&cfg.labels))
    }
}

pub fn rank(cfg: &Config, word: &Word) -> Result<Report, String> {
    let sys = soergel_core::CoxeterSystem::new(cfg.matrix.clone());
    let tau = HeckeElement::product_one_plus(&sys, word).tau();
    let ranks = graded_rank(&sys, word).map_err(|e| e.to_string())?;
    let summands: Vec<String> = ranks
        .iter()
        .map(|(i, n)| {
            let base = if *i == 0 { "R".to_string() } else { format!("R({})", 2 * i) };
            let n = n.to_string();
            if n == "1" {
                base
            } else {
                base + &superscript(&n)
            }
        })
        .collect();
    let human = format!("{}; Hom ≅ {}\n", tau.render_q(), summands.join(" ⊕ "));
    let table: Vec<Value> =
        ranks.iter().map(|(i, n)| json!({ "weight": i, "multiplicity": n.to_string() })).collect();
    let json = json!({
        "word": output::word(word),
        "tau": output::laurent(&tau),
        "graded_rank": table,
    });
    Ok(Report { human, json, passed: true })
}

pub fn leaves(cfg: &Config, word: &Word, all: bool) -> Result<Report, String> {
    let ctx = cfg.context()?;
    let labels = Some(&cfg.labels[..]);
    let list = if all { build_tree(&ctx, word) } else { light_leaves(&ctx, word) }.map_err(|e| e.to_string())?;
    let census = graded_census(&ctx, word).map_err(|e| e.to_string())?;
    let mut human = String::new();
    if all {
        human.push_str(&render_tree(&ctx, word, labels).map_err(|e| e.to_string())?);
        human.push('\n');
    }
    let light = list.iter().filter(|l| l.skeleton.is_light()).count();
    human.push_str(&format!("{} light leaves of {}\n", light, name(cfg, word)));
    let mut entries = Vec::new();
    for leaf in &list {
        let s = &leaf.skeleton;
        human.push_str(&format!(
            "\ni = {}  j = {}  target {}  weight {}  degree {}\n",
            render_bits(&s.bits_i),
            render_bits(&s.bits_j),
            name(cfg, &s.target),
            s.weight,
            s.degree()
        ));
        for (stage, moves) in &s.path_log {
            let moves: Vec<String> =
                moves.iter().map(|m| format!("{}@{}", Word::alternating(m.first, m.second, 2).render(labels), m.position)).collect();
            human.push_str(&format!("  stage {stage}: braid moves [{}]\n", moves.join(" ")));
        }
        for line in leaf.morphism.render(labels).lines() {
            human.push_str(&format!("  {line}\n"));
        }
        let mut v = output::skeleton(s);
        v["morphism"] = output::morphism(&leaf.morphism, cfg.rank());
        entries.push(v);
    }
    human.push_str("\ncensus:\n");
    let mut census_json = serde_json::Map::new();
    for (target, p) in &census {
        human.push_str(&format!("  {}: {}\n", name(cfg, target), p.render_q()));
        census_json.insert(target.render(None), output::laurent(p));
    }
    let json = json!({
        "word": output::word(word),
        "labels": cfg.labels,
        "light_count": light,
        "leaves": entries,
        "census": census_json,
    });
    Ok(Report { human, json, passed: true })
}

pub fn braid(cfg: &Config, word: &Word) -> Result<Report, String> {
    let &[s, r] = &word[..] else {
        return Err(format!("braid needs two letters, got `{}`", word.render(Some(&cfg.labels))));
    };
    let labels = Some(&cfg.labels[..]);
    let (ls, lr) = (&cfg.labels[s], &cfg.labels[r]);
    let m = match cfg.matrix.order(s, r) {
        Order::Finite(m) if s != r => m as usize,
        _ => return Err(format!("no braid relation between {ls} and {lr}")),
    };
    let ctx = cfg.context()?;
    let f = ctx.solve_braid(s, r).map_err(|e| e.to_string())?;
    let (x, y) = (Word::alternating(s, r, m), Word::alternating(r, s, m));
    let mut human = format!("f({ls},{lr}): {} -> {}, m = {m}, degree {}\n", x.render(labels), y.render(labels), f.degree());
    human.push_str(&f.render(labels));
    let mut json = json!({ "s": s, "r": r, "m": m, "morphism": output::morphism(&f, cfg.rank()) });
    if m == 3 {
        let img = verify::vanishing_image(&ctx, s, r).map_err(|e| e.to_string())?;
        human.push_str(&format!(
            "f(1⊗x_{lr}⊗1⊗1 + 1⊗1⊗x_{lr}⊗1) = {}\n",
            img.render(labels)
        ));
        json["vanishing_image"] = output::element(&img, cfg.rank());
    }
    Ok(Report { human, json, passed: true })
}

fn random_polynomials(rank: usize, seed: u64, count: usize) -> Vec<Polynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let terms = (0..rng.gen_range(1..5))
                .map(|_| {
                    let exps: Vec<u32> = (0..rank).map(|_| rng.gen_range(0..3)).collect();
                    (Monomial::from_exponents(&exps), Scalar::new(rng.gen_range(-5..6), rng.gen_range(1..4)))
                })
                .collect();
            Polynomial::from_terms(terms)
        })
        .collect()
}

pub fn verify(cfg: &Config, word: &Word, max_degree: i64, seed: u64) -> Result<Report, String> {
    let mut checks = Vec::new();
    let entries = CartanRealization::default_for(&cfg.matrix).entries().to_vec();
    let mut a = entries;
    for (i, j, v) in &cfg.cartan {
        if *i >= cfg.rank() || *j >= cfg.rank() {
            return Err(format!("cartan entry ({i},{j}) out of range"));
        }
        a[*i][*j] = v.clone();
    }
    match CartanRealization::new(cfg.matrix.clone(), a) {
        Err(e) => checks.push(Check::new("braid relations of the realization", false, e.to_string())),
        Ok(cr) => {
            let ctx = Context::with_realization(cr);
            run_checks(&ctx, cfg, word, max_degree, seed, &mut checks);
        }
    }
    let passed = checks.iter().all(|c| c.passed);
    let failed = checks.iter().filter(|c| !c.passed).count();
    let mut human = String::new();
    for c in &checks {
        human.push_str(&format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail));
    }
    if passed {
        human.push_str(&format!("all {} checks passed\n", checks.len()));
    } else {
        human.push_str(&format!("{failed} of {} checks failed\n", checks.len()));
    }
    let list: Vec<Value> =
        checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail })).collect();
    let json = json!({ "word": output::word(word), "seed": seed, "passed": passed, "checks": list });
    Ok(Report { human, json, passed })
}

fn run_checks(ctx: &Context, cfg: &Config, word: &Word, max_degree: i64, seed: u64, checks: &mut Vec<Check>) {
    let rank = cfg.rank();
    checks.push(verify::check_realization(ctx));
    checks.push(verify::check_decomposition(ctx, &random_polynomials(rank, seed, 24)));
    checks.extend(verify::check_light_leaves(ctx, word));
    checks.push(verify::check_basis_oracle(ctx, word, max_degree));
    for s in 0..rank {
        for r in 0..rank {
            let Some(m) = cfg.matrix.order(s, r).finite().filter(|_| s != r) else {
                continue;
            };
            checks.push(verify::check_braid_solver(ctx, s, r));
            if m == 3 {
                let name = format!("f({s},{r}) kills 1⊗x_{r}⊗1⊗1 + 1⊗1⊗x_{r}⊗1");
                checks.push(match verify::vanishing_image(ctx, s, r) {
                    Ok(e) if e.is_zero() => Check::new(name, true, "image is zero"),
                    Ok(e) => Check::new(name, false, format!("image {}", e.render(Some(&cfg.labels)))),
                    Err(e) => Check::new(name, false, e.to_string()),
                });
            }
        }
    }
    if rank == 2 {
        let m = cfg.matrix.order(0, 1);
        let r = verify_z_decomposition(m, 2);
        let detail = match &r {
            Ok(z) => format!("τ of the product = {}", z.tau_product),
            Err(e) => e.to_string(),
        };
        checks.push(Check::new("Z expansion of (1+T_s)(1+T_r)(1+T_s)(1+T_r)", r.is_ok(), detail));
    }
    let elements = ctx.system().elements_up_to(3);
    checks.push(verify::check_tau_pairing(ctx, &elements));
    match light_leaves(ctx, word) {
        Ok(leaves) => {
            let fs: Vec<_> = leaves.iter().map(|l| (*l.morphism).clone()).collect();
            if fs.iter().any(|f| !f.source().is_empty()) {
                checks.push(verify::check_adjunction(ctx, &fs));
            }
        }
        Err(e) => checks.push(Check::new("adjunction round trip", false, e.to_string())),
    }
    for k in 1..=word.len() {
        let target = word.slice(0, k).reversed();
        let source = word.slice(k, word.len());
        checks.push(verify::check_hom_basis(ctx, &source, &target));
    }
}

pub fn hombasis(cfg: &Config, source: &Word, target: &Word) -> Result<Report, String> {
    let ctx = cfg.context()?;
    let labels = Some(&cfg.labels[..]);
    let basis = hom_basis(&ctx, source, target).map_err(|e| e.to_string())?;
    let mut human = format!("{} basis elements of Hom({}, {})\n", basis.len(), name(cfg, source), name(cfg, target));
    let mut entries = Vec::new();
    let mut passed = true;
    for b in &basis {
        let valid = b.morphism.validate(&ctx).passed();
        passed &= valid;
        human.push_str(&format!(
            "\nleaf {}  weight {}  degree {}  {}\n",
            render_bits(&b.leaf_bits),
            b.weight,
            b.morphism.degree(),
            if valid { "valid" } else { "INVALID" }
        ));
        for line in b.morphism.render(labels).lines() {
            human.push_str(&format!("  {line}\n"));
        }
        entries.push(json!({
            "leaf_bits": render_bits(&b.leaf_bits),
            "weight": b.weight,
            "valid": valid,
            "morphism": output::morphism(&b.morphism, cfg.rank()),
        }));
    }
    let json = json!({
        "source": output::word(source),
        "target": output::word(target),
        "passed": passed,
        "basis": entries,
    });
    Ok(Report { human, json, passed })
}
