//! Finitely supported mixed strategies over one player's pure strategies.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::game::{opponents_profiles, Game, GameError, Pairing, Player, Strategy, StrategySet};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasureError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("negative weight {weight} on strategy {strategy}")]
    NegativeWeight { strategy: Strategy, weight: Rational },
    #[error("weights sum to {sum}, expected 1")]
    WeightSum { sum: Rational },
    #[error("strategy {strategy} listed twice")]
    DuplicateStrategy { strategy: Strategy },
    #[error("measure belongs to player {found}, expected player {expected}")]
    PlayerMismatch { expected: Player, found: Player },
    #[error("cannot parse mixed strategy `{0}`")]
    Parse(String),
    #[error("mixing coefficient {0} outside [0,1]")]
    Coefficient(Rational),
    #[error("the measure is already supported on the surviving strategies")]
    SupportedOnSurvivors,
    #[error("no dominator supplied for eliminated strategy {strategy}")]
    MissingDominator { strategy: Strategy },
    #[error("supplied dominator of strategy {strategy} does not strictly dominate it")]
    DominatorFails { strategy: Strategy },
    #[error("opponents have no surviving strategies")]
    EmptyOpponents,
}

/// A probability measure on `G_i` with finite support and rational weights.
///
/// Zero weights are never stored, so the key set is the support.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MixedStrategy {
    player: Player,
    weights: BTreeMap<Strategy, Rational>,
}

impl MixedStrategy {
    /// Validates nonnegativity, unit mass and indices.
    pub fn new(
        game: &Game,
        player: Player,
        weights: impl IntoIterator<Item = (Strategy, Rational)>,
    ) -> Result<Self, MeasureError> {
        game.check_player(player)?;
        let mut map = BTreeMap::new();
        let mut sum = Rational::zero();
        for (strategy, weight) in weights {
            game.check_strategy(player, strategy)?;
            if weight.is_negative() {
                return Err(MeasureError::NegativeWeight { strategy, weight });
            }
            if map.contains_key(&strategy) {
                return Err(MeasureError::DuplicateStrategy { strategy });
            }
            sum += &weight;
            if !weight.is_zero() {
                map.insert(strategy, weight);
            }
        }
        if !sum.is_one() {
            return Err(MeasureError::WeightSum { sum });
        }
        Ok(MixedStrategy { player, weights: map })
    }

    /// Skips validation; callers guarantee the invariants.
    pub(crate) fn from_parts(player: Player, weights: BTreeMap<Strategy, Rational>) -> Self {
        debug_assert!(weights.values().all(|w| w.is_positive()));
        debug_assert!(weights.values().sum::<Rational>().is_one());
        MixedStrategy { player, weights }
    }

    /// `δ_x`.
    pub fn dirac(game: &Game, player: Player, x: Strategy) -> Result<Self, MeasureError> {
        game.check_strategy(player, x)?;
        Ok(Self::from_parts(player, BTreeMap::from([(x, Rational::one())])))
    }

    /// Uniform measure over a nonempty set.
    pub fn uniform(game: &Game, player: Player, set: StrategySet) -> Result<Self, MeasureError> {
        let k = set.len() as i64;
        if k == 0 {
            return Err(MeasureError::WeightSum { sum: Rational::zero() });
        }
        Self::new(game, player, set.iter().map(|s| (s, Rational::new(1, k))))
    }

    pub fn player(&self) -> Player {
        self.player
    }

    pub fn weight(&self, s: Strategy) -> Rational {
        self.weights.get(&s).cloned().unwrap_or_default()
    }

    pub fn weights(&self) -> &BTreeMap<Strategy, Rational> {
        &self.weights
    }

    pub fn support(&self) -> StrategySet {
        self.weights.keys().copied().collect()
    }

    /// `Some(x)` iff this is `δ_x`.
    pub fn as_pure(&self) -> Option<Strategy> {
        match self.weights.len() {
            1 => self.weights.keys().next().copied(),
            _ => None,
        }
    }

    pub fn is_supported_in(&self, set: StrategySet) -> bool {
        self.support().is_subset(set)
    }

    /// The unique representation `μ = Σ c_x δ_x` with `c_x > 0`.
    pub fn decompose(&self) -> Vec<(Rational, Strategy)> {
        self.weights.iter().map(|(&s, w)| (w.clone(), s)).collect()
    }

    /// Inverse of [`decompose`](Self::decompose); also accepts repeated
    /// strategies, whose coefficients are added.
    pub fn recombine(game: &Game, player: Player, terms: &[(Rational, Strategy)]) -> Result<Self, MeasureError> {
        let mut map: BTreeMap<Strategy, Rational> = BTreeMap::new();
        for (c, s) in terms {
            if c.is_negative() {
                return Err(MeasureError::NegativeWeight { strategy: *s, weight: c.clone() });
            }
            *map.entry(*s).or_default() += c;
        }
        Self::new(game, player, map)
    }

    /// `Σ_k c_k μ_k` for coefficients summing to one.
    pub fn combine(game: &Game, player: Player, terms: &[(Rational, &MixedStrategy)]) -> Result<Self, MeasureError> {
        let mut flat = Vec::new();
        for (c, mu) in terms {
            if mu.player != player {
                return Err(MeasureError::PlayerMismatch { expected: player, found: mu.player });
            }
            for (s, w) in &mu.weights {
                flat.push((c * w, *s));
            }
        }
        Self::recombine(game, player, &flat)
    }

    /// `α·self + (1−α)·other`.
    pub fn mix(&self, game: &Game, alpha: &Rational, other: &MixedStrategy) -> Result<Self, MeasureError> {
        if alpha.is_negative() || *alpha > Rational::one() {
            return Err(MeasureError::Coefficient(alpha.clone()));
        }
        Self::combine(game, self.player, &[(alpha.clone(), self), (Rational::one() - alpha, other)])
    }

    /// Parses `T:1/2,M:1/2` (labels or zero-based indices).
    pub fn parse(game: &Game, player: Player, text: &str) -> Result<Self, MeasureError> {
        game.check_player(player)?;
        let mut terms = Vec::new();
        for part in text.split(',') {
            let (label, weight) = part.split_once(':').ok_or_else(|| MeasureError::Parse(text.to_string()))?;
            let label = label.trim();
            let s = game
                .strategy_index(player, label)
                .or_else(|e| label.parse::<Strategy>().map_err(|_| e))?;
            let w: Rational = weight.trim().parse().map_err(|_| MeasureError::Parse(text.to_string()))?;
            terms.push((s, w));
        }
        Self::new(game, player, terms)
    }

    pub fn render(&self, game: &Game) -> String {
        self.weights
            .iter()
            .map(|(&s, w)| format!("{}:{}", game.label(self.player, s), w))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// `V_i(μ, s_{-i})` at a table offset.
    pub(crate) fn value_at(&self, game: &Game, offset: usize) -> Rational {
        self.weights
            .iter()
            .map(|(&s, w)| w * game.payoff_at(self.player, s, offset))
            .sum()
    }
}

impl fmt::Debug for MixedStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(|(s, w)| format!("{s}:{w}")).collect();
        write!(f, "μ{}[{}]", self.player + 1, parts.join(","))
    }
}

/// `V_i(μ, s_{-i}) = Σ_y μ(y) u_i(y, s_{-i})`.
pub fn expected_payoff(game: &Game, mu: &MixedStrategy, opponents: &[Strategy]) -> Result<Rational, MeasureError> {
    let mut total = Rational::zero();
    for (&s, w) in &mu.weights {
        total += w * game.payoff_against(mu.player, s, opponents)?;
    }
    Ok(total)
}

/// `min_{s ∈ H_{-i}} V(μ, s) − V(m, s)` together with a minimising profile,
/// or `None` when `H_{-i}` is empty.
pub fn min_gap(
    game: &Game,
    pairing: &Pairing,
    mu: &MixedStrategy,
    m: &MixedStrategy,
) -> Result<Option<(Rational, Vec<Strategy>)>, MeasureError> {
    if mu.player != m.player {
        return Err(MeasureError::PlayerMismatch { expected: m.player, found: mu.player });
    }
    let mut best: Option<(Rational, Vec<Strategy>)> = None;
    for opp in opponents_profiles(game, pairing, mu.player) {
        let gap = mu.value_at(game, opp.offset) - m.value_at(game, opp.offset);
        if best.as_ref().is_none_or(|(b, _)| gap < *b) {
            best = Some((gap, opp.choices));
        }
    }
    Ok(best)
}

/// Builds a mixture dominating `m` w.r.t. `pairing` from per-strategy
/// dominators of the eliminated strategies.
///
/// Each eliminated `x` in the support of `m` is replaced by its dominator
/// `μ_x`; surviving strategies keep their own Dirac mass. Every dominator is
/// checked against `pairing` before use.
pub fn theorem9_dominator(
    game: &Game,
    pairing: &Pairing,
    dominators: &BTreeMap<Strategy, MixedStrategy>,
    m: &MixedStrategy,
) -> Result<MixedStrategy, MeasureError> {
    let i = m.player;
    let survivors = pairing.set(i);
    if m.is_supported_in(survivors) {
        return Err(MeasureError::SupportedOnSurvivors);
    }
    if !pairing.opponents_nonempty(i) {
        return Err(MeasureError::EmptyOpponents);
    }
    let mut terms: Vec<(Rational, MixedStrategy)> = Vec::new();
    for (&x, c) in &m.weights {
        if survivors.contains(x) {
            terms.push((c.clone(), MixedStrategy::dirac(game, i, x)?));
            continue;
        }
        let mu_x = dominators.get(&x).ok_or(MeasureError::MissingDominator { strategy: x })?;
        let dx = MixedStrategy::dirac(game, i, x)?;
        match min_gap(game, pairing, mu_x, &dx)? {
            Some((gap, _)) if gap.is_positive() => terms.push((c.clone(), mu_x.clone())),
            _ => return Err(MeasureError::DominatorFails { strategy: x }),
        }
    }
    let refs: Vec<(Rational, &MixedStrategy)> = terms.iter().map(|(c, mu)| (c.clone(), mu)).collect();
    MixedStrategy::combine(game, i, &refs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::fixtures::{prisoners_dilemma, three_by_two};
    use crate::rational::{int, rat};
    use proptest::prelude::*;
    use proptest::strategy::Strategy as _;

    #[test]
    fn dirac_and_decompose() {
        let pd = prisoners_dilemma();
        let d = MixedStrategy::dirac(&pd, 0, 1).unwrap();
        assert_eq!(d.render(&pd), "D:1");
        assert_eq!(d.decompose(), vec![(int(1), 1)]);
        assert_eq!(d.as_pure(), Some(1));
        for s in 0..2 {
            assert_eq!(expected_payoff(&pd, &d, &[s]).unwrap(), *pd.payoff_against(0, 1, &[s]).unwrap());
        }
        assert!(MixedStrategy::dirac(&pd, 0, 2).is_err());
    }

    #[test]
    fn validation() {
        let g = three_by_two();
        assert!(matches!(
            MixedStrategy::new(&g, 0, [(0, rat(1, 2)), (1, rat(1, 3))]),
            Err(MeasureError::WeightSum { .. })
        ));
        assert!(matches!(
            MixedStrategy::new(&g, 0, [(0, rat(3, 2)), (1, rat(-1, 2))]),
            Err(MeasureError::NegativeWeight { .. })
        ));
        let mu = MixedStrategy::new(&g, 0, [(0, rat(1, 2)), (1, rat(1, 2)), (2, int(0))]).unwrap();
        assert_eq!(mu.support().len(), 2);
    }

    #[test]
    fn parse_and_render() {
        let g = three_by_two();
        let mu = MixedStrategy::parse(&g, 0, "T:3/4, M:1/4").unwrap();
        assert_eq!(mu.decompose(), vec![(rat(3, 4), 0), (rat(1, 4), 1)]);
        assert_eq!(mu.render(&g), "T:3/4,M:1/4");
        assert!(MixedStrategy::parse(&g, 0, "T:1/2").is_err());
        assert!(MixedStrategy::parse(&g, 0, "Q:1").is_err());
    }

    #[test]
    fn half_half_expected_value() {
        let g = three_by_two();
        let mu = MixedStrategy::parse(&g, 0, "T:1/2,M:1/2").unwrap();
        assert_eq!(expected_payoff(&g, &mu, &[0]).unwrap(), rat(3, 2));
        assert_eq!(expected_payoff(&g, &mu, &[1]).unwrap(), rat(3, 2));
    }

    #[test]
    fn theorem9_on_three_by_two() {
        let g = three_by_two();
        let h = Pairing::from_indices(&g, &[&[0, 1], &[0, 1]]).unwrap();
        let mu_b = MixedStrategy::parse(&g, 0, "T:1/2,M:1/2").unwrap();
        let dominators = BTreeMap::from([(2, mu_b.clone())]);

        let db = MixedStrategy::dirac(&g, 0, 2).unwrap();
        assert_eq!(theorem9_dominator(&g, &h, &dominators, &db).unwrap(), mu_b);

        let m = MixedStrategy::parse(&g, 0, "B:1/2,T:1/2").unwrap();
        let mu = theorem9_dominator(&g, &h, &dominators, &m).unwrap();
        assert_eq!(mu, MixedStrategy::parse(&g, 0, "T:3/4,M:1/4").unwrap());
        // column L: 9/4 > 2, column R: 3/4 > 1/2
        let (gap, _) = min_gap(&g, &h, &mu, &m).unwrap().unwrap();
        assert_eq!(gap, rat(1, 4));

        let inside = MixedStrategy::parse(&g, 0, "T:1").unwrap();
        assert_eq!(theorem9_dominator(&g, &h, &dominators, &inside), Err(MeasureError::SupportedOnSurvivors));
        assert_eq!(
            theorem9_dominator(&g, &h, &BTreeMap::new(), &db),
            Err(MeasureError::MissingDominator { strategy: 2 })
        );
        let bad = BTreeMap::from([(2, MixedStrategy::dirac(&g, 0, 0).unwrap())]);
        assert_eq!(theorem9_dominator(&g, &h, &bad, &db), Err(MeasureError::DominatorFails { strategy: 2 }));
    }

    fn measure_strategy(k: usize) -> impl proptest::strategy::Strategy<Value = Vec<u32>> {
        proptest::collection::vec(0u32..6, k).prop_filter("nonzero mass", |v| v.iter().any(|&w| w > 0))
    }

    fn to_measure(g: &Game, raw: &[u32]) -> MixedStrategy {
        let total: i64 = raw.iter().map(|&w| w as i64).sum();
        MixedStrategy::new(g, 0, raw.iter().enumerate().map(|(s, &w)| (s, rat(w as i64, total)))).unwrap()
    }

    proptest! {
        #[test]
        fn decompose_round_trip(raw in measure_strategy(3)) {
            let g = three_by_two();
            let mu = to_measure(&g, &raw);
            let parts = mu.decompose();
            prop_assert!(parts.iter().all(|(c, _)| c.is_positive()));
            prop_assert_eq!(MixedStrategy::recombine(&g, 0, &parts).unwrap(), mu);
        }

        #[test]
        fn expected_payoff_is_affine(a in measure_strategy(3), b in measure_strategy(3), num in 0i64..=8) {
            let g = three_by_two();
            let (mu, m) = (to_measure(&g, &a), to_measure(&g, &b));
            let alpha = rat(num, 8);
            let mixed = mu.mix(&g, &alpha, &m).unwrap();
            for s in 0..2 {
                let direct = expected_payoff(&g, &mixed, &[s]).unwrap();
                let split = &alpha * expected_payoff(&g, &mu, &[s]).unwrap()
                    + (int(1) - &alpha) * expected_payoff(&g, &m, &[s]).unwrap();
                prop_assert_eq!(direct, split);
            }
        }
    }
}
