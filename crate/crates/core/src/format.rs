//! Plain-text game format.
//!
//! ```text
//! game <name>
//! players <n>
//! strategies <i> : <name>+
//! payoffs
//! <s1> ... <sn> : <q1> ... <qn>
//! end
//! ```
//!
//! `#` starts a comment that runs to the end of the line. Tokens are
//! whitespace-separated; payoffs are integers or `p/q` with `q > 0`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::game::Game;
use crate::rational::{format_rational, parse_rational, Rational};

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_game(text: &str) -> Result<Game> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .map(|(i, l)| (i, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, toks)| !toks.is_empty());
    let last_line = text.lines().count().max(1);

    let mut next = |expect: &str| {
        lines
            .next()
            .ok_or_else(|| err(last_line, format!("unexpected end of input, expected `{expect}`")))
    };

    let (ln, toks) = next("game")?;
    if toks.len() != 2 || toks[0] != "game" {
        return Err(err(ln, "expected `game <name>`"));
    }
    let name = toks[1].to_string();

    let (ln, toks) = next("players")?;
    if toks.len() != 2 || toks[0] != "players" {
        return Err(err(ln, "expected `players <n>`"));
    }
    let n: usize = toks[1]
        .parse()
        .map_err(|_| err(ln, format!("invalid player count `{}`", toks[1])))?;
    if n < 2 {
        return Err(err(ln, format!("a game needs at least 2 players, got {n}")));
    }

    let mut strategies: Vec<Option<Vec<String>>> = vec![None; n];
    for _ in 0..n {
        let (ln, toks) = next("strategies")?;
        if toks.len() < 4 || toks[0] != "strategies" || toks[2] != ":" {
            return Err(err(ln, "expected `strategies <i> : <name>+`"));
        }
        let i: usize = toks[1]
            .parse()
            .ok()
            .filter(|i| (1..=n).contains(i))
            .ok_or_else(|| err(ln, format!("invalid player index `{}`", toks[1])))?;
        if strategies[i - 1].is_some() {
            return Err(err(ln, format!("strategies for player {i} given twice")));
        }
        let names: Vec<String> = toks[3..].iter().map(|s| s.to_string()).collect();
        for (k, s) in names.iter().enumerate() {
            if s == ":" {
                return Err(err(ln, "`:` is not a strategy name"));
            }
            if names[..k].contains(s) {
                return Err(err(ln, format!("duplicate strategy `{s}` for player {i}")));
            }
        }
        if names.len() > crate::game::MAX_STRATEGIES {
            return Err(err(ln, format!("too many strategies for player {i}")));
        }
        strategies[i - 1] = Some(names);
    }
    let strategies: Vec<Vec<String>> = strategies.into_iter().map(Option::unwrap).collect();

    let (ln, toks) = next("payoffs")?;
    if toks != ["payoffs"] {
        return Err(err(ln, "expected `payoffs`"));
    }

    let sizes: Vec<usize> = strategies.iter().map(Vec::len).collect();
    let cells: usize = sizes.iter().product();
    let mut table: Vec<Option<(usize, Vec<Rational>)>> = vec![None; cells];
    loop {
        let (ln, toks) = next("end")?;
        if toks == ["end"] {
            if let Some(missing) = table.iter().position(Option::is_none) {
                let joint = decode(&sizes, missing);
                let label: Vec<&str> = joint
                    .iter()
                    .enumerate()
                    .map(|(i, &s)| strategies[i][s].as_str())
                    .collect();
                return Err(err(ln, format!("missing payoff cell `{}`", label.join(" "))));
            }
            break;
        }
        if toks.len() != 2 * n + 1 || toks[n] != ":" {
            return Err(err(
                ln,
                format!("expected {n} strategy names, `:`, and {n} payoffs"),
            ));
        }
        let mut index = 0;
        for (i, tok) in toks[..n].iter().enumerate() {
            let s = strategies[i]
                .iter()
                .position(|name| name == tok)
                .ok_or_else(|| err(ln, format!("unknown strategy `{tok}` for player {}", i + 1)))?;
            index = index * sizes[i] + s;
        }
        let values = toks[n + 1..]
            .iter()
            .map(|t| parse_rational(t).map_err(|_| err(ln, format!("malformed rational `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        if let Some((first, _)) = &table[index] {
            return Err(err(
                ln,
                format!("duplicate payoff cell (first given on line {first})"),
            ));
        }
        table[index] = Some((ln, values));
    }
    if let Some((ln, toks)) = lines.next() {
        return Err(err(ln, format!("unexpected `{}` after `end`", toks[0])));
    }
    let payoffs = table.into_iter().map(|c| c.unwrap().1).collect();
    Game::new(name, strategies, payoffs)
}

fn decode(sizes: &[usize], mut idx: usize) -> Vec<usize> {
    let mut out = vec![0; sizes.len()];
    for i in (0..sizes.len()).rev() {
        out[i] = idx % sizes[i];
        idx /= sizes[i];
    }
    out
}

fn valid_token(s: &str) -> bool {
    !s.is_empty() && s != ":" && !s.contains('#') && !s.chars().any(char::is_whitespace)
}

/// Renders a game in the text format. Fails only if a name cannot be
/// written as a single token.
pub fn write_game(game: &Game) -> Result<String> {
    if !valid_token(game.name()) {
        return Err(Error::Argument(format!("game name `{}` is not a token", game.name())));
    }
    let mut out = String::new();
    let n = game.num_players();
    writeln!(out, "game {}", game.name()).unwrap();
    writeln!(out, "players {n}").unwrap();
    for i in 0..n {
        for s in game.strategy_names(i) {
            if !valid_token(s) {
                return Err(Error::Argument(format!("strategy name `{s}` is not a token")));
            }
        }
        writeln!(out, "strategies {} : {}", i + 1, game.strategy_names(i).join(" ")).unwrap();
    }
    out.push_str("payoffs\n");
    for (joint, payoffs) in game.joint_strategies().zip(game.payoff_table()) {
        let names: Vec<&str> = joint
            .0
            .iter()
            .enumerate()
            .map(|(i, &s)| game.strategy_name(i, s))
            .collect();
        let values: Vec<String> = payoffs.iter().map(format_rational).collect();
        writeln!(out, "{} : {}", names.join(" "), values.join(" ")).unwrap();
    }
    out.push_str("end\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PD: &str = "\
# prisoner's dilemma
game pd
players 2
strategies 1 : C D
strategies 2 : C D
payoffs
C C : 2 2   # cooperate
C D : 0 3
D C : 3 0
D D : 1 1
end
";

    fn line_of(e: Error) -> usize {
        match e {
            Error::Parse { line, .. } => line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn parses_pd() {
        let g = parse_game(PD).unwrap();
        assert_eq!(g.name(), "pd");
        assert_eq!(g.payoff(0, &[1, 0]), &crate::rational::int(3));
        assert_eq!(parse_game(&write_game(&g).unwrap()).unwrap(), g);
    }

    #[test]
    fn duplicate_cell() {
        let text = PD.replace("D D : 1 1", "D C : 1 1");
        let e = parse_game(&text).unwrap_err();
        assert_eq!(line_of(e.clone()), 10);
        assert!(e.to_string().contains("duplicate"));
    }

    #[test]
    fn missing_cell() {
        let text = PD.replace("D D : 1 1\n", "");
        let e = parse_game(&text).unwrap_err();
        assert_eq!(line_of(e.clone()), 10);
        assert!(e.to_string().contains("missing payoff cell `D D`"));
    }

    #[test]
    fn unknown_strategy() {
        let text = PD.replace("C D : 0 3", "C X : 0 3");
        let e = parse_game(&text).unwrap_err();
        assert_eq!(line_of(e.clone()), 8);
        assert!(e.to_string().contains("unknown strategy `X`"));
    }

    #[test]
    fn malformed_rational() {
        for bad in ["1/0", "1.5", "x", "2/-3"] {
            let text = PD.replace("C D : 0 3", &format!("C D : 0 {bad}"));
            let e = parse_game(&text).unwrap_err();
            assert_eq!(line_of(e.clone()), 8, "{bad}");
            assert!(e.to_string().contains("malformed rational"));
        }
    }

    #[test]
    fn structural_errors() {
        assert_eq!(line_of(parse_game("game\n").unwrap_err()), 1);
        assert_eq!(line_of(parse_game("game g\nplayers 1\n").unwrap_err()), 2);
        let no_end = PD.replace("end\n", "");
        assert!(parse_game(&no_end).is_err());
        let trailing = format!("{PD}junk\n");
        assert_eq!(line_of(parse_game(&trailing).unwrap_err()), 12);
        let dup_name = PD.replace("strategies 2 : C D", "strategies 2 : C C");
        assert_eq!(line_of(parse_game(&dup_name).unwrap_err()), 5);
    }

    #[test]
    fn fractional_payoffs() {
        let text = PD.replace("C C : 2 2", "C C : 4/2 -1/3");
        let g = parse_game(&text).unwrap();
        assert_eq!(g.payoff(1, &[0, 0]), &crate::rational::ratio(-1, 3));
    }
}
