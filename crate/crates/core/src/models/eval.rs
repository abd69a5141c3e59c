use std::collections::BTreeMap;

use thiserror::Error;

use super::model::FiniteModel;
use crate::logic::{free_vars, Formula, Term, BLACK_SWAN, IMAGINABLE, LESS, OCCURS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable `{0}` is not bound by the environment")]
    UnboundVariable(String),
    #[error("constant `{0}` has no interpretation in a finite model")]
    UninterpretedConstant(String),
    #[error("predicate `{name}/{arity}` is not interpreted")]
    UnknownPredicate { name: String, arity: usize },
    #[error("element {element} is outside the domain 0..{n}")]
    OutOfDomain { element: usize, n: usize },
    #[error("formula uses more than {0} distinct variables")]
    TooManyVariables(usize),
}

/// Partial assignment of variables to domain elements.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Environment(BTreeMap<String, usize>);

impl Environment {
    pub fn new() -> Self {
        Environment::default()
    }

    pub fn bind(mut self, var: impl Into<String>, element: usize) -> Self {
        self.0.insert(var.into(), element);
        self
    }

    pub fn insert(&mut self, var: impl Into<String>, element: usize) -> Option<usize> {
        self.0.insert(var.into(), element)
    }

    pub fn get(&self, var: &str) -> Option<usize> {
        self.0.get(var).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

pub fn eval_term(t: &Term, env: &Environment) -> Result<usize, EvalError> {
    match t {
        Term::Var(v) => env
            .get(v)
            .ok_or_else(|| EvalError::UnboundVariable(v.clone())),
        Term::Const(c) => Err(EvalError::UninterpretedConstant(c.clone())),
    }
}

/// Tarskian truth of `f` in `m` under `env`. Quantifiers range over
/// `0..m.size()`; `B(t)` is read as `~img(t)`.
pub fn eval(m: &FiniteModel, f: &Formula, env: &Environment) -> Result<bool, EvalError> {
    match f {
        Formula::Pred(p, args) => {
            let vals = args
                .iter()
                .map(|t| eval_term(t, env))
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(&element) = vals.iter().find(|&&e| e >= m.size()) {
                return Err(EvalError::OutOfDomain {
                    element,
                    n: m.size(),
                });
            }
            match (p.as_str(), vals.as_slice()) {
                (OCCURS, [a]) => Ok(m.occ(*a)),
                (IMAGINABLE, [a]) => Ok(m.img(*a)),
                (BLACK_SWAN, [a]) => Ok(!m.img(*a)),
                (LESS, [a, b]) => Ok(m.lt(*a, *b)),
                _ => Err(EvalError::UnknownPredicate {
                    name: p.clone(),
                    arity: args.len(),
                }),
            }
        }
        Formula::Not(a) => Ok(!eval(m, a, env)?),
        Formula::And(a, b) => Ok(eval(m, a, env)? && eval(m, b, env)?),
        Formula::Or(a, b) => Ok(eval(m, a, env)? || eval(m, b, env)?),
        Formula::Implies(a, b) => Ok(!eval(m, a, env)? || eval(m, b, env)?),
        Formula::Forall(x, body) => {
            let mut env = env.clone();
            for d in 0..m.size() {
                env.insert(x.clone(), d);
                if !eval(m, body, &env)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::Exists(x, body) => {
            let mut env = env.clone();
            for d in 0..m.size() {
                env.insert(x.clone(), d);
                if eval(m, body, &env)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

const MAX_SLOTS: usize = 32;

#[derive(Debug, Clone)]
enum Node {
    Occ(usize),
    Img(usize),
    NotImg(usize),
    Lt(usize, usize),
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Implies(Box<Node>, Box<Node>),
    Forall(usize, Box<Node>),
    Exists(usize, Box<Node>),
}

/// A formula with variables resolved to numbered slots, for fast repeated
/// evaluation over many models. Agrees with [`eval`].
#[derive(Debug, Clone)]
pub struct CompiledFormula {
    root: Node,
    slots: Vec<String>,
    free: Vec<usize>,
}

impl CompiledFormula {
    pub fn compile(f: &Formula) -> Result<Self, EvalError> {
        let mut slots = Vec::new();
        let root = compile_node(f, &mut slots)?;
        let free = free_vars(f)
            .iter()
            .map(|v| {
                slots
                    .iter()
                    .position(|s| s == v)
                    .expect("free variable has a slot")
            })
            .collect();
        Ok(CompiledFormula { root, slots, free })
    }

    /// Free variables in sorted order; [`CompiledFormula::eval_with`] takes
    /// their values in this order.
    pub fn free_vars(&self) -> Vec<&str> {
        self.free.iter().map(|&s| self.slots[s].as_str()).collect()
    }

    pub fn is_closed(&self) -> bool {
        self.free.is_empty()
    }

    /// Truth in `m` with the free variables set to `values`. Extra values are ignored.
    pub fn eval_with(&self, m: &FiniteModel, values: &[usize]) -> Result<bool, EvalError> {
        if let Some(&missing) = self.free.get(values.len()) {
            return Err(EvalError::UnboundVariable(self.slots[missing].clone()));
        }
        if let Some(&element) = values.iter().find(|&&e| e >= m.size()) {
            return Err(EvalError::OutOfDomain {
                element,
                n: m.size(),
            });
        }
        let mut env = [0usize; MAX_SLOTS];
        for (&slot, &v) in self.free.iter().zip(values) {
            env[slot] = v;
        }
        Ok(run(&self.root, m, &mut env))
    }

    /// Truth of a closed formula.
    pub fn holds(&self, m: &FiniteModel) -> bool {
        debug_assert!(self.is_closed());
        let mut env = [0usize; MAX_SLOTS];
        run(&self.root, m, &mut env)
    }
}

fn slot(v: &Term, slots: &mut Vec<String>) -> Result<usize, EvalError> {
    match v {
        Term::Var(name) => var_slot(name, slots),
        Term::Const(c) => Err(EvalError::UninterpretedConstant(c.clone())),
    }
}

fn var_slot(name: &str, slots: &mut Vec<String>) -> Result<usize, EvalError> {
    if let Some(k) = slots.iter().position(|s| s == name) {
        return Ok(k);
    }
    if slots.len() == MAX_SLOTS {
        return Err(EvalError::TooManyVariables(MAX_SLOTS));
    }
    slots.push(name.to_string());
    Ok(slots.len() - 1)
}

fn compile_node(f: &Formula, slots: &mut Vec<String>) -> Result<Node, EvalError> {
    Ok(match f {
        Formula::Pred(p, args) => match (p.as_str(), args.as_slice()) {
            (OCCURS, [a]) => Node::Occ(slot(a, slots)?),
            (IMAGINABLE, [a]) => Node::Img(slot(a, slots)?),
            (BLACK_SWAN, [a]) => Node::NotImg(slot(a, slots)?),
            (LESS, [a, b]) => Node::Lt(slot(a, slots)?, slot(b, slots)?),
            _ => {
                return Err(EvalError::UnknownPredicate {
                    name: p.clone(),
                    arity: args.len(),
                })
            }
        },
        Formula::Not(a) => Node::Not(Box::new(compile_node(a, slots)?)),
        Formula::And(a, b) => Node::And(
            Box::new(compile_node(a, slots)?),
            Box::new(compile_node(b, slots)?),
        ),
        Formula::Or(a, b) => Node::Or(
            Box::new(compile_node(a, slots)?),
            Box::new(compile_node(b, slots)?),
        ),
        Formula::Implies(a, b) => Node::Implies(
            Box::new(compile_node(a, slots)?),
            Box::new(compile_node(b, slots)?),
        ),
        Formula::Forall(x, body) => {
            let s = var_slot(x, slots)?;
            Node::Forall(s, Box::new(compile_node(body, slots)?))
        }
        Formula::Exists(x, body) => {
            let s = var_slot(x, slots)?;
            Node::Exists(s, Box::new(compile_node(body, slots)?))
        }
    })
}

fn run(node: &Node, m: &FiniteModel, env: &mut [usize; MAX_SLOTS]) -> bool {
    match node {
        Node::Occ(a) => m.occ(env[*a]),
        Node::Img(a) => m.img(env[*a]),
        Node::NotImg(a) => !m.img(env[*a]),
        Node::Lt(a, b) => m.lt(env[*a], env[*b]),
        Node::Not(a) => !run(a, m, env),
        Node::And(a, b) => run(a, m, env) && run(b, m, env),
        Node::Or(a, b) => run(a, m, env) || run(b, m, env),
        Node::Implies(a, b) => !run(a, m, env) || run(b, m, env),
        Node::Forall(x, body) => {
            let saved = env[*x];
            let mut result = true;
            for d in 0..m.size() {
                env[*x] = d;
                if !run(body, m, env) {
                    result = false;
                    break;
                }
            }
            env[*x] = saved;
            result
        }
        Node::Exists(x, body) => {
            let saved = env[*x];
            let mut result = false;
            for d in 0..m.size() {
                env[*x] = d;
                if run(body, m, env) {
                    result = true;
                    break;
                }
            }
            env[*x] = saved;
            result
        }
    }
}
