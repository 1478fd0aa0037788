use std::collections::HashMap;

use super::{int, QMat};

/// Invertible elementary matrices used by the generic congruence search:
/// coordinate swaps, sign flips and unit shears `I ± E_ij`.
pub fn elementary_moves(d: usize) -> Vec<QMat> {
    let mut moves = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let mut p = QMat::identity(d);
            p.set(i, i, int(0));
            p.set(j, j, int(0));
            p.set(i, j, int(1));
            p.set(j, i, int(1));
            moves.push(p);
        }
    }
    for i in 0..d {
        let mut s = QMat::identity(d);
        s.set(i, i, int(-1));
        moves.push(s);
    }
    for i in 0..d {
        for j in 0..d {
            if i == j {
                continue;
            }
            for c in [1, -1] {
                let mut s = QMat::identity(d);
                s.set(i, j, int(c));
                moves.push(s);
            }
        }
    }
    moves
}

/// Bounded search for an invertible `C` with `a = C b Cᵗ` using products of
/// the generic elementary moves. `None` only means the budget ran out.
pub fn solve_congruence_candidate(a: &QMat, b: &QMat, bound: usize) -> Option<QMat> {
    if !a.is_square() || a.shape() != b.shape() {
        return None;
    }
    congruence_search(a, b, &elementary_moves(a.rows()), bound)
}

/// Meet-in-the-middle breadth-first search over words in `moves`.
///
/// Forward states are `C b Cᵗ`, backward states are `D a Dᵗ`; a collision
/// yields the witness `D⁻¹ C`. At most `bound` states are generated. Every
/// returned witness has been checked exactly.
pub fn congruence_search(a: &QMat, b: &QMat, moves: &[QMat], bound: usize) -> Option<QMat> {
    if !a.is_square() || a.shape() != b.shape() {
        return None;
    }
    let d = a.rows();
    let verify = |w: QMat| -> Option<QMat> {
        (w.inverse().is_some() && *a == &(&w * b) * &w.transpose()).then_some(w)
    };
    if a == b {
        return Some(QMat::identity(d));
    }

    let mut fwd: HashMap<QMat, QMat> = HashMap::from([(b.clone(), QMat::identity(d))]);
    let mut bwd: HashMap<QMat, QMat> = HashMap::from([(a.clone(), QMat::identity(d))]);
    let mut fwd_frontier = vec![b.clone()];
    let mut bwd_frontier = vec![a.clone()];
    let mut generated = 0usize;

    while generated < bound && !(fwd_frontier.is_empty() && bwd_frontier.is_empty()) {
        let forward = bwd_frontier.is_empty()
            || (!fwd_frontier.is_empty() && fwd_frontier.len() <= bwd_frontier.len());
        let (frontier, own, other) = if forward {
            (&mut fwd_frontier, &mut fwd, &bwd)
        } else {
            (&mut bwd_frontier, &mut bwd, &fwd)
        };
        let mut next = Vec::new();
        for state in frontier.drain(..) {
            let acc = own[&state].clone();
            for g in moves {
                if generated >= bound {
                    break;
                }
                generated += 1;
                let s = &(g * &state) * &g.transpose();
                if own.contains_key(&s) {
                    continue;
                }
                let acc_new = g * &acc;
                if let Some(partner) = other.get(&s) {
                    // forward: s = C b Cᵗ = D a Dᵗ, so a = (D⁻¹C) b (D⁻¹C)ᵗ
                    let (c, dmat) = if forward {
                        (&acc_new, partner)
                    } else {
                        (partner, &acc_new)
                    };
                    if let Some(w) = dmat.inverse().and_then(|di| verify(&di * c)) {
                        return Some(w);
                    }
                }
                own.insert(s.clone(), acc_new);
                next.push(s);
            }
        }
        *frontier = next;
    }
    None
}
