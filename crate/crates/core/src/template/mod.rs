//! The template `⫪`: a monad on the Gray comonoid `⫪₀ = 𝕋⟨O,P⟩` in the
//! double category of bicomodules, together with the games and strategies it
//! schedules.
//!
//! `⫪₁ = 𝕋⟨O_s,P_s,O_t,P_t⟩` carries the coaction
//! `O_s ↦ P₁·O_s`, `P_s ↦ P_s·O₁`, `O_t ↦ O₃·O_t`, `P_t ↦ P_t·P₃`.
//! The multiplication keeps boundary moves and erases synchronized ones; the
//! unit pairs each move of `⫪₀` with one source and one target move, in the
//! only order that makes the unit a double cell.

mod game;
mod interaction;
mod strategy;

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use serde_json::{json, Value};

use crate::asynch_graph::{anchor_of, find_isomorphism, GraphHom};
use crate::comod::{
    compose_bicomodules, compose_double_cells, comonoid_from_polarity, Bicomodule, Comonoid, Composite,
    DoubleCell, Generator, Polarity, Token,
};
use crate::error::{Error, Result};
use crate::reshuffle::{project_path, AsyncFunctor, Path, Shape};

pub use game::{
    game_check, make_game, negate_game, par, lollipop, plus, tensor_games, unit_game, void_game, with, Game,
};
pub(crate) use game::tensor_all;
pub use interaction::{interaction_intersection, render_set, Style, Trajectory};
pub use strategy::{
    compose_strategies, compose_strategies_detailed, copycat, curry, injection, negate_strategy, pairing, projection,
    simulation_check, strategy_iso, tensor_strategies, uncurry, Move, Simulation, Strategy, StrategyComposite, Tag,
};

/// Labels of the four strategy generators, in edge order of `⫪₁`.
pub const STRATEGY_LABELS: [&str; 4] = ["O_s", "P_s", "O_t", "P_t"];

/// Outcome of one generator-level law check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawResult {
    pub name: String,
    pub outcome: std::result::Result<(), String>,
}

impl LawResult {
    pub fn of(name: &str, r: Result<()>) -> Self {
        LawResult {
            name: name.to_string(),
            outcome: r.map_err(|e| e.to_string()),
        }
    }

    pub fn passed(&self) -> bool {
        self.outcome.is_ok()
    }
}

#[derive(Clone, Debug)]
pub struct Template {
    /// `⫪₀`
    pub obj: Arc<Comonoid>,
    /// `⫪₁ : ⫪₀ ↛ ⫪₀`
    pub mor: Arc<Bicomodule>,
    /// The identity bicomodule on `⫪₀`.
    pub id0: Arc<Bicomodule>,
    /// `⫪₂ = ⫪₁ ⊠ ⫪₁`, synchronized generators labelled `PO` and `OP`.
    pub two: Composite,
    /// `(⫪₁ ⊠ ⫪₁) ⊠ ⫪₁`, internal generators labelled `PO_s`, `OP_s`, `PO_t`, `OP_t`.
    pub three: Composite,
    /// `⫪₁ ⊠ (⫪₁ ⊠ ⫪₁)`, labelled the same way.
    pub three_right: Composite,
    /// Label-preserving isomorphism between the supports of the two bracketings.
    pub associator: GraphHom,
    /// `⫪₂ ⇒ ⫪₁`
    pub mult: DoubleCell,
    /// `id ⇒ ⫪₁`
    pub unit: DoubleCell,
    /// How many candidate unit orders passed the double cell check.
    pub unit_survivors: usize,
}

static TEMPLATE: OnceLock<Template> = OnceLock::new();

/// The template, built and checked once per process.
pub fn template() -> &'static Template {
    TEMPLATE.get_or_init(|| build_template().expect("the template satisfies its own laws"))
}

fn is_internal(label: &str) -> bool {
    label == "PO" || label == "OP"
}

fn relabel(c: &mut Composite, f: impl Fn(&Generator, &str) -> String) {
    let gens = c.generators.clone();
    let support = Arc::new(c.support().relabel(|x, l| f(&gens[x], l)));
    c.bicomodule.coact.src = support.clone();
    c.bicomodule.support = support;
}

/// Builds the template and checks every law, failing on the first violation.
pub fn build_template() -> Result<Template> {
    let t = construct_template()?;
    if let Some(bad) = t.laws().into_iter().find(|l| !l.passed()) {
        return Err(Error::LawViolation(format!(
            "{}: {}",
            bad.name,
            bad.outcome.unwrap_err()
        )));
    }
    Ok(t)
}

/// Builds the template without running [`Template::laws`].
pub fn construct_template() -> Result<Template> {
    let anchor0 = Arc::new(anchor_of(&["O", "P"]));
    let obj = Arc::new(comonoid_from_polarity(anchor0, &[Polarity::O, Polarity::P])?);
    let anchor1 = Arc::new(anchor_of(&STRATEGY_LABELS));
    let (o, p) = (0, 1);
    let tokens = vec![
        vec![Token::Left(p), Token::Support(0)],
        vec![Token::Support(1), Token::Left(o)],
        vec![Token::Right(o), Token::Support(2)],
        vec![Token::Support(3), Token::Right(p)],
    ];
    let mor = Arc::new(Bicomodule::assemble(obj.clone(), obj.clone(), anchor1.clone(), &[(0, 0)], &tokens)?);
    let id0 = Arc::new(Bicomodule::identity(obj.clone())?);

    let two = compose_bicomodules(&mor, &mor)?;
    let two_arc = Arc::new(two.bicomodule.clone());

    let mut three = compose_bicomodules(&two_arc, &mor)?;
    let inner = two.support().clone();
    relabel(&mut three, |g, l| match g {
        Generator::Sync { .. } => format!("{l}_t"),
        Generator::Left { s_edge, .. } if is_internal(inner.edge(*s_edge).label.as_str()) => format!("{l}_s"),
        _ => l.to_string(),
    });
    let mut three_right = compose_bicomodules(&mor, &two_arc)?;
    relabel(&mut three_right, |g, l| match g {
        Generator::Sync { .. } => format!("{l}_s"),
        Generator::Right { t_edge, .. } if is_internal(inner.edge(*t_edge).label.as_str()) => format!("{l}_t"),
        _ => l.to_string(),
    });
    let (s3, r3) = (three.support().clone(), three_right.support().clone());
    let associator = find_isomorphism(&s3, &r3, &|_, _| true, &|x, y| s3.edge(x).label == r3.edge(y).label)
        .ok_or_else(|| Error::LawViolation("the two bracketings of ⫪₃ are not isomorphic".into()))?;

    let mult = mult_cell(&obj, &mor, &two)?;
    let (unit, unit_survivors) = unit_cell(&obj, &mor, &id0, &two, &mult)?;

    Ok(Template {
        obj,
        mor,
        id0,
        two,
        three,
        three_right,
        associator,
        mult,
        unit,
        unit_survivors,
    })
}

fn mult_cell(obj: &Arc<Comonoid>, mor: &Arc<Bicomodule>, two: &Composite) -> Result<DoubleCell> {
    let s2 = two.support().clone();
    let s1 = mor.support.clone();
    let edge_map = s2
        .edges()
        .iter()
        .map(|e| {
            if is_internal(&e.label) {
                Ok(Path::empty(0))
            } else {
                Ok(Path::edge(&s1, s1.require_edge(&e.label)?))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let body = AsyncFunctor::with_block_swaps(s2, s1, vec![0], edge_map)?;
    Ok(DoubleCell {
        a: AsyncFunctor::identity(obj.carrier.clone()),
        b: AsyncFunctor::identity(obj.carrier.clone()),
        src: Arc::new(two.bicomodule.clone()),
        tgt: mor.clone(),
        body,
    })
}

/// The unitor `id ⊠ M → M` (or `M ⊠ id → M`): project composite moves onto
/// the `M` factor.
fn unitor(c: &Composite, keep: usize) -> Result<AsyncFunctor> {
    let m = if keep == 0 { &c.s } else { &c.t };
    let vertex_map = c.pairs.iter().map(|&(s, t)| if keep == 0 { s } else { t }).collect();
    let edge_map = c
        .expansions
        .iter()
        .map(|p| project_path(&c.product, p, keep))
        .collect::<Result<Vec<_>>>()?;
    AsyncFunctor::with_block_swaps(c.support().clone(), m.support.clone(), vertex_map, edge_map)
}

fn neutrality(unit: &DoubleCell, mor: &Arc<Bicomodule>, id0: &Arc<Bicomodule>, two: &Composite, mult: &DoubleCell) -> Result<()> {
    let id_cell = DoubleCell::identity(mor.clone());
    let left = compose_bicomodules(id0, mor)?;
    let l = compose_double_cells(unit, &id_cell, &left, two)?.body.then(&mult.body)?;
    if let Some(why) = l.mismatch(&unitor(&left, 1)?) {
        return Err(Error::LawViolation(format!("left neutrality: {why}")));
    }
    let right = compose_bicomodules(mor, id0)?;
    let r = compose_double_cells(&id_cell, unit, &right, two)?.body.then(&mult.body)?;
    if let Some(why) = r.mismatch(&unitor(&right, 0)?) {
        return Err(Error::LawViolation(format!("right neutrality: {why}")));
    }
    Ok(())
}

fn unit_cell(
    obj: &Arc<Comonoid>,
    mor: &Arc<Bicomodule>,
    id0: &Arc<Bicomodule>,
    two: &Composite,
    mult: &DoubleCell,
) -> Result<(DoubleCell, usize)> {
    let o_orders: [&[&str]; 2] = [&["O_t", "P_s"], &["P_s", "O_t"]];
    let p_orders: [&[&str]; 2] = [&["O_s", "P_t"], &["P_t", "O_s"]];
    let mut survivors = Vec::new();
    for o in o_orders {
        for p in p_orders {
            let body = AsyncFunctor::from_names(
                id0.support.clone(),
                mor.support.clone(),
                &[("*", "*")],
                &[("O", o), ("P", p)],
            )?;
            let cell = DoubleCell {
                a: AsyncFunctor::identity(obj.carrier.clone()),
                b: AsyncFunctor::identity(obj.carrier.clone()),
                src: id0.clone(),
                tgt: mor.clone(),
                body,
            };
            if cell.check().is_ok() && neutrality(&cell, mor, id0, two, mult).is_ok() {
                survivors.push(cell);
            }
        }
    }
    let n = survivors.len();
    match n {
        1 => Ok((survivors.pop().expect("one survivor"), 1)),
        _ => Err(Error::LawViolation(format!("{n} candidate unit orders satisfy the laws, expected exactly 1"))),
    }
}

impl Template {
    /// The anchor `𝕋⟨O,P⟩` every game is labelled in.
    pub fn anchor(&self) -> &Arc<crate::asynch_graph::AsynchGraph> {
        &self.obj.carrier
    }

    /// Edge of `⫪₁` with the given label.
    pub fn generator(&self, tag: Tag) -> usize {
        tag as usize
    }

    fn generator_labels(c: &Composite) -> BTreeSet<String> {
        c.support().edges().iter().map(|e| e.label.clone()).collect()
    }

    fn check_labels(c: &Composite, expected: &[&str]) -> Result<()> {
        let got = Self::generator_labels(c);
        let want: BTreeSet<String> = expected.iter().map(|s| s.to_string()).collect();
        if c.support().edge_count() != expected.len() || got != want {
            return Err(Error::LawViolation(format!(
                "generators {:?}, expected {:?}",
                got, want
            )));
        }
        Ok(())
    }

    fn associativity(&self) -> Result<()> {
        let id_cell = DoubleCell::identity(self.mor.clone());
        let left = compose_double_cells(&self.mult, &id_cell, &self.three, &self.two)?
            .body
            .then(&self.mult.body)?;
        let right = compose_double_cells(&id_cell, &self.mult, &self.three_right, &self.two)?
            .body
            .then(&self.mult.body)?;
        let iso = AsyncFunctor::from_hom(
            self.three.support().clone(),
            self.three_right.support().clone(),
            &self.associator,
        );
        let (s3, r3) = (&self.three, &self.three_right);
        for x in 0..s3.support().edge_count() {
            let y = self.associator.edge_map[x];
            let rename = |t: Token| if let Token::Support(_) = t { Token::Support(y) } else { t };
            let lt: Vec<Token> = s3.bicomodule.tokens(x).into_iter().map(rename).collect();
            if lt != r3.bicomodule.tokens(y) {
                return Err(Error::LawViolation(format!(
                    "associator does not commute with the coactions on {}",
                    s3.support().edge_name(x)
                )));
            }
        }
        match left.mismatch(&iso.then(&right)?) {
            None => Ok(()),
            Some(why) => Err(Error::LawViolation(why)),
        }
    }

    /// Source and target projections of `⫪₁` by counit erasure.
    pub fn projection_table(&self) -> Result<Vec<(String, String, String)>> {
        let s = &self.mor.support;
        let counit = |keep: usize| -> Result<AsyncFunctor> {
            let r = AsyncFunctor::rearrange(self.mor.target().clone(), &Shape::flat(3), &[keep])?;
            self.mor.coact.then(&r)
        };
        let (src, tgt) = (counit(0)?, counit(2)?);
        Ok((0..s.edge_count())
            .map(|e| {
                (
                    s.edge_name(e).to_string(),
                    src.tgt.word(src.edge_map[e].edges()).replace('ε', "id"),
                    tgt.tgt.word(tgt.edge_map[e].edges()).replace('ε', "id"),
                )
            })
            .collect())
    }

    fn check_projection_table(&self) -> Result<()> {
        let expected = [("O_s", "P", "id"), ("P_s", "O", "id"), ("O_t", "id", "O"), ("P_t", "id", "P")];
        let got = self.projection_table()?;
        for ((n, s, t), (en, es, et)) in got.iter().zip(expected) {
            if n != en || s != es || t != et {
                return Err(Error::LawViolation(format!("s({n}) = {s}, t({n}) = {t}")));
            }
        }
        Ok(())
    }

    /// Every generator-level law of the template, in a fixed order.
    pub fn laws(&self) -> Vec<LawResult> {
        vec![
            LawResult::of("⫪₀ is a Gray comonoid", self.obj.check()),
            LawResult::of("⫪₁ is a bicomodule", self.mor.check()),
            LawResult::of("⫪₂ is a bicomodule", self.two.bicomodule.check()),
            LawResult::of(
                "⫪₂ generators are O_s P_s PO OP O_t P_t",
                Self::check_labels(&self.two, &["O_s", "P_s", "PO", "OP", "O_t", "P_t"]),
            ),
            LawResult::of(
                "⫪₃ generators are O_s P_s PO_s OP_s PO_t OP_t O_t P_t",
                Self::check_labels(&self.three, &["O_s", "P_s", "PO_s", "OP_s", "PO_t", "OP_t", "O_t", "P_t"])
                    .and_then(|_| {
                        Self::check_labels(
                            &self.three_right,
                            &["O_s", "P_s", "PO_s", "OP_s", "PO_t", "OP_t", "O_t", "P_t"],
                        )
                    }),
            ),
            LawResult::of("source and target projections of ⫪₁", self.check_projection_table()),
            LawResult::of("mult is a double cell", self.mult.check()),
            LawResult::of("unit is a double cell", self.unit.check()),
            LawResult::of(
                "unit order is unique",
                if self.unit_survivors == 1 {
                    Ok(())
                } else {
                    Err(Error::LawViolation(format!("{} survivors", self.unit_survivors)))
                },
            ),
            LawResult::of("associativity", self.associativity()),
            LawResult::of(
                "neutrality",
                neutrality(&self.unit, &self.mor, &self.id0, &self.two, &self.mult),
            ),
        ]
    }

    /// A JSON description of the template, including the derived unit order.
    pub fn describe(&self) -> Value {
        let words = |f: &AsyncFunctor| -> Value {
            let m: std::collections::BTreeMap<String, String> = (0..f.src.edge_count())
                .map(|e| (f.src.edge_name(e).to_string(), f.tgt.word(f.edge_map[e].edges())))
                .collect();
            json!(m)
        };
        let labels = |c: &Composite| -> Vec<String> { c.support().edges().iter().map(|e| e.label.clone()).collect() };
        json!({
            "coaction": words(&self.mor.coact),
            "mult": words(&self.mult.body),
            "three": labels(&self.three),
            "two": labels(&self.two),
            "unit": words(&self.unit.body),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn template_builds_and_is_lawful() {
        let t = template();
        for law in t.laws() {
            assert!(law.passed(), "{}: {:?}", law.name, law.outcome);
        }
    }

    #[test]
    fn unit_order_is_target_then_source_for_opponent() {
        let t = template();
        let b = &t.unit.body;
        assert_eq!(b.tgt.word(b.edge_map[0].edges()), "O_t·P_s");
        assert_eq!(b.tgt.word(b.edge_map[1].edges()), "O_s·P_t");
    }

    #[test]
    fn mult_erases_exactly_the_synchronized_generators() {
        let t = template();
        let s2 = t.two.support();
        for (e, edge) in s2.edges().iter().enumerate() {
            let img = &t.mult.body.edge_map[e];
            assert_eq!(img.is_empty(), is_internal(&edge.label), "{}", edge.label);
        }
    }

    #[test]
    fn projection_table_matches_the_four_generators() {
        let rows = template().projection_table().unwrap();
        assert_eq!(rows[0], ("O_s".into(), "P".into(), "id".into()));
        assert_eq!(rows[3], ("P_t".into(), "id".into(), "P".into()));
    }
}
