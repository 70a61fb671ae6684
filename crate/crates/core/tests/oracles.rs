//! The simplex solver and the LP-based dominance and belief tests against a
//! brute-force vertex enumeration.

use gamefix::dominance::{exists_supporting_belief, mixed_dominance_witness, BeliefKind};
use gamefix::lp::{LinearProgram, LpOutcome, Relation};
use gamefix::random::{random_game, random_restriction, rng};
use gamefix::rational::int;
use gamefix::{Game, Rational, Restriction, StrategySet};
use num_traits::{One, Zero};
use rand::Rng;

/// Solves a square system exactly; `None` when singular.
fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                for c in col..n {
                    let v = &f * &a[col][c];
                    a[r][c] -= v;
                }
                let v = &f * &b[col];
                b[r] -= v;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Best objective over the vertices of a pointed bounded polyhedron, or
/// `None` when no vertex is feasible.
fn vertex_max(lp: &LinearProgram) -> Option<Rational> {
    let n = lp.num_vars();
    let mut rows: Vec<(Vec<Rational>, Rational)> =
        lp.constraints.iter().map(|c| (c.coeffs.clone(), c.rhs.clone())).collect();
    for i in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[i] = Rational::one();
        rows.push((e, Rational::zero()));
    }
    let mut best: Option<Rational> = None;
    for active in subsets(rows.len(), n) {
        let a = active.iter().map(|&r| rows[r].0.clone()).collect();
        let b = active.iter().map(|&r| rows[r].1.clone()).collect();
        let Some(x) = solve_square(a, b) else { continue };
        if !lp.is_feasible(&x) {
            continue;
        }
        let v: Rational = x.iter().zip(&lp.objective).map(|(a, b)| a * b).sum();
        if best.as_ref().is_none_or(|b| v > *b) {
            best = Some(v);
        }
    }
    best
}

fn small(r: &mut impl Rng, lo: i64, hi: i64) -> Rational {
    int(r.gen_range(lo..=hi))
}

#[test]
fn simplex_matches_vertex_enumeration() {
    let mut r = rng(2024);
    let mut infeasible = 0;
    for _ in 0..600 {
        let n = r.gen_range(1..=3);
        let m = r.gen_range(1..=4);
        let mut lp = LinearProgram::new(n);
        lp.objective = (0..n).map(|_| small(&mut r, -3, 3)).collect();
        for _ in 0..m {
            let rel = match r.gen_range(0..4) {
                0 => Relation::Ge,
                1 => Relation::Eq,
                _ => Relation::Le,
            };
            lp.add((0..n).map(|_| small(&mut r, -3, 3)).collect(), rel, small(&mut r, -5, 5));
        }
        for i in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[i] = Rational::one();
            lp.add(e, Relation::Le, int(6));
        }
        match (lp.solve(), vertex_max(&lp)) {
            (LpOutcome::Optimal { point, value }, Some(best)) => {
                assert!(lp.is_feasible(&point));
                assert_eq!(value, best, "{lp:?}");
            }
            (LpOutcome::Infeasible, None) => infeasible += 1,
            (got, want) => panic!("solver {got:?} vs oracle {want:?} on {lp:?}"),
        }
    }
    assert!(infeasible > 0);
}

fn pay(game: &Game, player: usize, own: usize, other: usize) -> Rational {
    let joint = if player == 0 { [own, other] } else { [other, own] };
    game.payoff(player, &joint).clone()
}

/// `max t'` over `σ ∈ Δ(pool)` with `σ·u(·,c) - u(s,c) ≥ t' - 20` for every column.
fn oracle_mixed_dominated(game: &Game, g: &Restriction, player: usize, s: usize) -> bool {
    let pool: Vec<usize> = (0..game.num_strategies(player)).collect();
    let cols: Vec<usize> = g.component(1 - player).iter().collect();
    if cols.is_empty() {
        return true;
    }
    let k = pool.len();
    let mut lp = LinearProgram::new(k + 1);
    lp.objective = vec![Rational::zero(); k + 1];
    lp.objective[k] = Rational::one();
    for &c in &cols {
        let mut row: Vec<Rational> = pool.iter().map(|&p| pay(game, player, p, c)).collect();
        row.push(-Rational::one());
        lp.add(row, Relation::Ge, pay(game, player, s, c) - int(20));
    }
    let mut sum = vec![Rational::one(); k];
    sum.push(Rational::zero());
    lp.add(sum, Relation::Eq, Rational::one());
    let mut cap = vec![Rational::zero(); k + 1];
    cap[k] = Rational::one();
    lp.add(cap, Relation::Le, int(40));
    vertex_max(&lp).expect("simplex is nonempty") > int(20)
}

/// Some `μ ∈ Δ(S_{-i})` making `s` weakly best within the pool.
fn oracle_best_response(game: &Game, g: &Restriction, pool: &StrategySet, player: usize, s: usize) -> bool {
    let cols: Vec<usize> = g.component(1 - player).iter().collect();
    if cols.is_empty() {
        return false;
    }
    let mut lp = LinearProgram::new(cols.len());
    lp.objective = vec![Rational::zero(); cols.len()];
    for k in pool.iter() {
        let row = cols.iter().map(|&c| pay(game, player, s, c) - pay(game, player, k, c)).collect();
        lp.add(row, Relation::Ge, Rational::zero());
    }
    lp.add(vec![Rational::one(); cols.len()], Relation::Eq, Rational::one());
    vertex_max(&lp).is_some()
}

#[test]
fn dominance_and_beliefs_match_oracles() {
    let mut r = rng(77);
    let mut dominated = 0;
    let mut not_br = 0;
    for t in 0..150 {
        let rows = r.gen_range(2..=4);
        let cols = r.gen_range(2..=4);
        let game = random_game(&mut r, &format!("o{t}"), rows, cols);
        for _ in 0..4 {
            let g = random_restriction(&mut r, &game);
            for player in 0..2 {
                let full = StrategySet::full(game.num_strategies(player));
                for s in 0..game.num_strategies(player) {
                    let lp = mixed_dominance_witness(&game, &g, player, &full, s).unwrap().is_some();
                    let want = oracle_mixed_dominated(&game, &g, player, s);
                    assert_eq!(lp, want, "mixed dominance of {s} for player {player} in {g:?}");
                    dominated += lp as usize;
                    for pool in [full, *g.component(player)] {
                        let got = exists_supporting_belief(&game, &g, &pool, player, s, BeliefKind::Correlated)
                            .unwrap()
                            .is_some();
                        assert_eq!(got, oracle_best_response(&game, &g, &pool, player, s));
                        not_br += !got as usize;
                    }
                }
            }
        }
    }
    assert!(dominated > 0 && not_br > 0);
}
