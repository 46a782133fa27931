use crate::board::{PlayState, Vertex, VertexSet};

use super::StrategyError;

/// Disjoint vertex pairs plus an optional distinguished vertex outside them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PairSet {
    pairs: Vec<(Vertex, Vertex)>,
    distinguished: Option<Vertex>,
}

impl PairSet {
    pub fn new(pairs: Vec<(Vertex, Vertex)>, distinguished: Option<Vertex>) -> Result<Self, StrategyError> {
        let mut seen = VertexSet::empty();
        for &(a, b) in &pairs {
            if a == b || a == 0 || b == 0 || a > 64 || b > 64 {
                return Err(StrategyError::BadPairSet);
            }
            for v in [a, b] {
                if seen.contains(v) {
                    return Err(StrategyError::BadPairSet);
                }
                seen.insert(v);
            }
        }
        if distinguished.is_some_and(|v| v == 0 || v > 64 || seen.contains(v)) {
            return Err(StrategyError::BadPairSet);
        }
        let mut pairs: Vec<(Vertex, Vertex)> =
            pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        pairs.sort_unstable();
        Ok(PairSet {
            pairs,
            distinguished,
        })
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.pairs
    }

    pub fn distinguished(&self) -> Option<Vertex> {
        self.distinguished
    }

    pub fn partner(&self, v: Vertex) -> Option<Vertex> {
        self.pairs.iter().find_map(|&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    pub fn covered(&self) -> VertexSet {
        self.pairs.iter().flat_map(|&(a, b)| [a, b]).collect()
    }
}

/// Which of the two pairing strategies the mover is playing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairingRole {
    /// The mover claims the last vertex of the board and forces the opponent
    /// into every pair.
    LastMover,
    /// The opponent claims the last vertex; the mover forces them into every
    /// pair and onto the distinguished vertex.
    NotLastMover,
}

/// Next move of the pairing strategy for the player to move.
pub fn pairing_move(state: &PlayState, pairs: &PairSet, role: PairingRole) -> Result<Vertex, StrategyError> {
    let free = state.unclaimed();
    if free.is_empty() {
        return Err(StrategyError::NoLegalMove);
    }
    let me = state.to_move();
    let mine = state.claimed_by(me);
    let theirs = state.claimed_by(me.opponent());

    // Answer inside a pair the opponent has just opened.
    for &(a, b) in pairs.pairs() {
        if theirs.contains(a) && free.contains(b) {
            return Ok(b);
        }
        if theirs.contains(b) && free.contains(a) {
            return Ok(a);
        }
    }
    let intact: Vec<(Vertex, Vertex)> = pairs
        .pairs()
        .iter()
        .copied()
        .filter(|&(a, b)| free.contains(a) && free.contains(b))
        .collect();
    let in_intact: VertexSet = intact.iter().flat_map(|&(a, b)| [a, b]).collect();

    match role {
        PairingRole::LastMover => {}
        PairingRole::NotLastMover => {
            // Vertices the opponent still has to be pushed onto.
            let mut owed = VertexSet::empty();
            if let Some(v) = pairs.distinguished().filter(|&v| free.contains(v)) {
                owed.insert(v);
            }
            for &(a, b) in pairs.pairs() {
                if mine.contains(a) && free.contains(b) {
                    owed.insert(b);
                }
                if mine.contains(b) && free.contains(a) {
                    owed.insert(a);
                }
            }
            if owed.is_empty() {
                if let Some(&(a, _)) = intact.first() {
                    return Ok(a);
                }
            }
            if let Some(v) = free.difference(in_intact).difference(owed).first() {
                return Ok(v);
            }
            return Ok(free.first().expect("nonempty"));
        }
    }
    Ok(free
        .difference(in_intact)
        .first()
        .or_else(|| free.first())
        .expect("nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn answers_inside_pair() {
        let pairs = PairSet::new(vec![(1, 2)], None).unwrap();
        // First player took 3, second player opened the pair at 1.
        let s = PlayState::from_moves(5, &[3, 1]).unwrap();
        assert_eq!(pairing_move(&s, &pairs, PairingRole::LastMover), Ok(2));
    }

    #[test]
    fn plays_lowest_free_outside_pairs() {
        let pairs = PairSet::new(vec![(1, 2)], None).unwrap();
        let s = PlayState::from_moves(5, &[3, 4]).unwrap();
        assert_eq!(pairing_move(&s, &pairs, PairingRole::LastMover), Ok(5));
        let full = PlayState::from_moves(2, &[1, 2]).unwrap();
        assert_eq!(
            pairing_move(&full, &pairs, PairingRole::LastMover),
            Err(StrategyError::NoLegalMove)
        );
    }

    #[test]
    fn rejects_overlapping_pairs() {
        assert_eq!(PairSet::new(vec![(1, 2), (2, 3)], None), Err(StrategyError::BadPairSet));
        assert_eq!(PairSet::new(vec![(1, 2)], Some(2)), Err(StrategyError::BadPairSet));
    }
}
