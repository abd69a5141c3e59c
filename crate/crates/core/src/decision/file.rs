//! Declarative universe files.
//!
//! ```text
//! event calm  occ=T img=T
//! event swan1 occ=T img=F
//! action hedge
//! outcome loss
//! gamma hedge calm = loss
//! phi [loss, loss] = hedge
//! phi * = hedge
//! order calm < swan1
//! ```
//!
//! `#` starts a comment. Every `gamma` cell must be given.

use super::map::{DecisionMap, OutcomeTable};
use super::universe::{Event, EventUniverse};
use super::DecisionError;

/// A universe together with an outcome table and a decision map over it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionProblem {
    pub universe: EventUniverse,
    pub gamma: OutcomeTable,
    pub phi: DecisionMap,
}

fn err(line: usize, message: impl Into<String>) -> DecisionError {
    DecisionError::Parse {
        line,
        message: message.into(),
    }
}

fn flag(line: usize, word: &str, key: &str) -> Result<bool, DecisionError> {
    match word.strip_prefix(key).and_then(|r| r.strip_prefix('=')) {
        Some("T") => Ok(true),
        Some("F") => Ok(false),
        _ => Err(err(
            line,
            format!("expected `{key}=T` or `{key}=F`, found `{word}`"),
        )),
    }
}

fn lookup(line: usize, names: &[String], name: &str, kind: &str) -> Result<usize, DecisionError> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| err(line, format!("unknown {kind} `{name}`")))
}

fn declare(
    line: usize,
    names: &mut Vec<String>,
    name: &str,
    kind: &str,
) -> Result<(), DecisionError> {
    if names.iter().any(|n| n == name) {
        return Err(err(line, format!("duplicate {kind} `{name}`")));
    }
    names.push(name.to_string());
    Ok(())
}

pub fn parse_problem(text: &str) -> Result<DecisionProblem, DecisionError> {
    let mut events: Vec<Event> = Vec::new();
    let mut event_names: Vec<String> = Vec::new();
    let mut actions: Vec<String> = Vec::new();
    let mut outcomes: Vec<String> = Vec::new();
    let mut gamma_cells: Vec<(usize, String, String, String)> = Vec::new();
    let mut phi_lines: Vec<(usize, Option<Vec<String>>, String)> = Vec::new();
    let mut order_lines: Vec<(usize, String, String)> = Vec::new();

    for (no, raw) in text.lines().enumerate() {
        let no = no + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let words: Vec<&str> = body.split_whitespace().collect();
        match words[0] {
            "event" => {
                let [_, name, occ, img] = words.as_slice() else {
                    return Err(err(no, "expected `event <name> occ=<T|F> img=<T|F>`"));
                };
                declare(no, &mut event_names, name, "event")?;
                events.push(Event::new(
                    *name,
                    flag(no, occ, "occ")?,
                    flag(no, img, "img")?,
                ));
            }
            "action" | "outcome" => {
                let [kind, name] = words.as_slice() else {
                    return Err(err(no, format!("expected `{} <name>`", words[0])));
                };
                let list = if *kind == "action" {
                    &mut actions
                } else {
                    &mut outcomes
                };
                declare(no, list, name, kind)?;
            }
            "gamma" => {
                let [_, a, e, "=", o] = words.as_slice() else {
                    return Err(err(no, "expected `gamma <action> <event> = <outcome>`"));
                };
                gamma_cells.push((no, a.to_string(), e.to_string(), o.to_string()));
            }
            "phi" => {
                let rest = body["phi".len()..].trim();
                let (lhs, rhs) = rest
                    .rsplit_once('=')
                    .ok_or_else(|| err(no, "expected `phi [<outcomes>] = <action>`"))?;
                let lhs = lhs.trim();
                let vector = if lhs == "*" {
                    None
                } else {
                    let inner = lhs
                        .strip_prefix('[')
                        .and_then(|l| l.strip_suffix(']'))
                        .ok_or_else(|| err(no, format!("expected `[..]` or `*`, found `{lhs}`")))?;
                    Some(
                        inner
                            .split(',')
                            .map(str::trim)
                            .filter(|s| !s.is_empty())
                            .map(str::to_string)
                            .collect(),
                    )
                };
                phi_lines.push((no, vector, rhs.trim().to_string()));
            }
            "order" => {
                let [_, a, "<", b] = words.as_slice() else {
                    return Err(err(no, "expected `order <event> < <event>`"));
                };
                order_lines.push((no, a.to_string(), b.to_string()));
            }
            other => return Err(err(no, format!("unknown directive `{other}`"))),
        }
    }

    let mut universe = EventUniverse::new(events)?;
    if !order_lines.is_empty() {
        let pairs = order_lines
            .iter()
            .map(|(no, a, b)| {
                Ok((
                    lookup(*no, &event_names, a, "event")?,
                    lookup(*no, &event_names, b, "event")?,
                ))
            })
            .collect::<Result<Vec<_>, DecisionError>>()?;
        universe = universe.with_order(pairs)?;
    }

    let mut table: Vec<Vec<Option<usize>>> = vec![vec![None; event_names.len()]; actions.len()];
    for (no, a, e, o) in &gamma_cells {
        let (a, e, o) = (
            lookup(*no, &actions, a, "action")?,
            lookup(*no, &event_names, e, "event")?,
            lookup(*no, &outcomes, o, "outcome")?,
        );
        if table[a][e].replace(o).is_some() {
            return Err(err(*no, "duplicate gamma entry"));
        }
    }
    let table = table
        .into_iter()
        .enumerate()
        .map(|(a, row)| {
            row.into_iter()
                .enumerate()
                .map(|(e, cell)| {
                    cell.ok_or_else(|| DecisionError::MissingGamma {
                        action: actions[a].clone(),
                        event: event_names[e].clone(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let gamma = OutcomeTable::new(actions.clone(), outcomes.clone(), table)?;

    let mut phi = DecisionMap::new(actions.clone(), outcomes.clone());
    for (no, vector, action) in phi_lines {
        let a = lookup(no, &actions, &action, "action")?;
        match vector {
            None => {
                if phi.default.replace(a).is_some() {
                    return Err(err(no, "duplicate `phi *` entry"));
                }
            }
            Some(v) => {
                let v = v
                    .iter()
                    .map(|o| lookup(no, &outcomes, o, "outcome"))
                    .collect::<Result<Vec<_>, _>>()?;
                if phi.entries.insert(v, a).is_some() {
                    return Err(err(no, "duplicate phi entry"));
                }
            }
        }
    }
    Ok(DecisionProblem {
        universe,
        gamma,
        phi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "\
# two events
event calm occ=T img=T
event swan occ=T img=F   # a black swan
action hedge
action ignore
outcome gain
outcome loss
gamma hedge calm = gain
gamma hedge swan = loss
gamma ignore calm = loss
gamma ignore swan = loss
phi [gain, loss] = hedge
phi * = ignore
order calm < swan
";

    #[test]
    fn parses_a_complete_file() {
        let p = parse_problem(SMALL).unwrap();
        assert_eq!(p.universe.len(), 2);
        assert_eq!(p.universe.black_swan_set(), 0b10);
        assert_eq!(p.universe.order(), Some(&[(0, 1)][..]));
        assert_eq!(p.gamma.table, vec![vec![0, 1], vec![1, 1]]);
        assert_eq!(p.phi.entries.get(&vec![0, 1]), Some(&0));
        assert_eq!(p.phi.default, Some(1));
    }

    #[test]
    fn missing_gamma_entry_is_an_error() {
        let text = SMALL.replace("gamma ignore swan = loss\n", "");
        assert_eq!(
            parse_problem(&text),
            Err(DecisionError::MissingGamma {
                action: "ignore".into(),
                event: "swan".into()
            })
        );
    }

    #[test]
    fn line_numbers_in_errors() {
        let cases = [
            ("event a occ=X img=T\n", 1),
            ("event a occ=T img=T\nevent a occ=T img=T\n", 2),
            ("action a\ngamma a b = c\n", 2),
            ("action a\noutcome o\nphi [o, x] = a\n", 3),
            ("event a occ=T img=T\norder a < b\n", 2),
            ("frobnicate\n", 1),
            ("action a\nphi o = a\n", 2),
        ];
        for (text, line) in cases {
            match parse_problem(text) {
                Err(DecisionError::Parse { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn cyclic_order_is_rejected() {
        let text = "event a occ=T img=T\nevent b occ=T img=T\norder a < b\norder b < a\n";
        assert_eq!(parse_problem(text), Err(DecisionError::NotStrictOrder));
    }
}
