//! Division-free straight-line programs.
//!
//! A program is a list of instructions, each referring only to earlier
//! ones, plus a list of output references. Programs are evaluated over any
//! [`Ring`]; derivatives are produced by reverse-mode differentiation so the
//! gradient program stays within a constant factor of the original length.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactring::{Rat, UPoly};
use crate::ring::{QuotElem, Ring};

#[derive(Clone, Debug, PartialEq)]
pub enum Instr {
    Input(usize),
    Const(Rat),
    Add(usize, usize),
    Sub(usize, usize),
    Mul(usize, usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Slp {
    inputs: usize,
    instrs: Vec<Instr>,
    outputs: Vec<usize>,
}

/// Handle to an instruction inside an [`SlpBuilder`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Node(usize);

#[derive(Clone, Debug)]
pub struct SlpBuilder {
    inputs: usize,
    instrs: Vec<Instr>,
    input_nodes: Vec<Option<Node>>,
}

impl SlpBuilder {
    pub fn new(inputs: usize) -> Self {
        SlpBuilder {
            inputs,
            instrs: Vec::new(),
            input_nodes: vec![None; inputs],
        }
    }

    fn push(&mut self, ins: Instr) -> Node {
        self.instrs.push(ins);
        Node(self.instrs.len() - 1)
    }

    pub fn input(&mut self, i: usize) -> Node {
        assert!(i < self.inputs, "input index out of range");
        if let Some(node) = self.input_nodes[i] {
            return node;
        }
        let node = self.push(Instr::Input(i));
        self.input_nodes[i] = Some(node);
        node
    }

    pub fn constant(&mut self, c: Rat) -> Node {
        self.push(Instr::Const(c))
    }

    pub fn add(&mut self, a: Node, b: Node) -> Node {
        self.push(Instr::Add(a.0, b.0))
    }

    pub fn sub(&mut self, a: Node, b: Node) -> Node {
        self.push(Instr::Sub(a.0, b.0))
    }

    pub fn mul(&mut self, a: Node, b: Node) -> Node {
        self.push(Instr::Mul(a.0, b.0))
    }

    pub fn neg(&mut self, a: Node) -> Node {
        let z = self.constant(Rat::zero());
        self.sub(z, a)
    }

    pub fn scale(&mut self, c: Rat, a: Node) -> Node {
        let k = self.constant(c);
        self.mul(k, a)
    }

    pub fn pow(&mut self, a: Node, e: u32) -> Node {
        if e == 0 {
            return self.constant(Rat::one());
        }
        let mut base = a;
        let mut acc: Option<Node> = None;
        let mut e = e;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base,
                    Some(x) => self.mul(x, base),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = self.mul(base, base);
        }
        acc.expect("positive exponent")
    }

    pub fn sum(&mut self, terms: &[Node]) -> Node {
        match terms.split_first() {
            None => self.constant(Rat::zero()),
            Some((first, rest)) => rest.iter().fold(*first, |acc, &t| self.add(acc, t)),
        }
    }

    /// Horner evaluation of a dense univariate polynomial at `x`.
    pub fn upoly(&mut self, p: &UPoly, x: Node) -> Node {
        let Some((lead, rest)) = p.coeffs().split_last() else {
            return self.constant(Rat::zero());
        };
        let mut acc = self.constant(lead.clone());
        for c in rest.iter().rev() {
            let m = self.mul(acc, x);
            let k = self.constant(c.clone());
            acc = self.add(m, k);
        }
        acc
    }

    /// Inlines `slp` with its inputs bound to `args`; returns its outputs.
    pub fn embed(&mut self, slp: &Slp, args: &[Node]) -> Vec<Node> {
        assert_eq!(args.len(), slp.inputs, "embedded program arity mismatch");
        let mut map = Vec::with_capacity(slp.instrs.len());
        for ins in &slp.instrs {
            let node = match ins {
                Instr::Input(i) => args[*i],
                Instr::Const(c) => self.constant(c.clone()),
                Instr::Add(a, b) => self.add(map[*a], map[*b]),
                Instr::Sub(a, b) => self.sub(map[*a], map[*b]),
                Instr::Mul(a, b) => self.mul(map[*a], map[*b]),
            };
            map.push(node);
        }
        slp.outputs.iter().map(|&o| map[o]).collect()
    }

    pub fn build(self, outputs: &[Node]) -> Slp {
        Slp {
            inputs: self.inputs,
            instrs: self.instrs,
            outputs: outputs.iter().map(|n| n.0).collect(),
        }
    }
}

impl Slp {
    /// Validates references; every operand must point to an earlier instruction.
    pub fn from_parts(inputs: usize, instrs: Vec<Instr>, outputs: Vec<usize>) -> Result<Self> {
        for (k, ins) in instrs.iter().enumerate() {
            let ok = match ins {
                Instr::Input(i) => *i < inputs,
                Instr::Const(_) => true,
                Instr::Add(a, b) | Instr::Sub(a, b) | Instr::Mul(a, b) => *a < k && *b < k,
            };
            if !ok {
                return Err(Error::InvalidInput(format!("bad reference in instruction {k}")));
            }
        }
        if outputs.iter().any(|&o| o >= instrs.len()) {
            return Err(Error::InvalidInput("output reference out of range".into()));
        }
        Ok(Slp {
            inputs,
            instrs,
            outputs,
        })
    }

    pub fn constant(inputs: usize, c: Rat) -> Slp {
        let mut b = SlpBuilder::new(inputs);
        let k = b.constant(c);
        b.build(&[k])
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs.len()
    }

    /// Instruction count.
    pub fn len(&self) -> usize {
        self.instrs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instrs.is_empty()
    }

    pub fn instrs(&self) -> &[Instr] {
        &self.instrs
    }

    /// Keeps only the selected outputs.
    pub fn select(&self, outputs: &[usize]) -> Slp {
        Slp {
            inputs: self.inputs,
            instrs: self.instrs.clone(),
            outputs: outputs.iter().map(|&k| self.outputs[k]).collect(),
        }
    }

    /// Evaluates every output at `point`. `like` fixes the ring shape for
    /// constants (it matters for quotient rings and series).
    pub fn eval<R: Ring>(&self, point: &[R], like: &R) -> Result<Vec<R>> {
        if point.len() != self.inputs {
            return Err(Error::InvalidInput(format!(
                "program expects {} inputs, got {}",
                self.inputs,
                point.len()
            )));
        }
        let mut vals: Vec<R> = Vec::with_capacity(self.instrs.len());
        for ins in &self.instrs {
            let v = match ins {
                Instr::Input(i) => point[*i].clone(),
                Instr::Const(c) => like.constant(c),
                Instr::Add(a, b) => vals[*a].plus(&vals[*b]),
                Instr::Sub(a, b) => vals[*a].minus(&vals[*b]),
                Instr::Mul(a, b) => vals[*a].times(&vals[*b]),
            };
            vals.push(v);
        }
        Ok(self.outputs.iter().map(|&o| vals[o].clone()).collect())
    }

    /// Single-output convenience wrapper around [`Slp::eval`].
    pub fn eval1<R: Ring>(&self, point: &[R], like: &R) -> Result<R> {
        Ok(self.eval(point, like)?.swap_remove(0))
    }

    /// Reverse-mode differentiation. Outputs `f, df/dx_1, ..., df/dx_n`.
    pub fn gradient(&self) -> Result<Slp> {
        if self.outputs.len() != 1 {
            return Err(Error::InvalidInput(
                "gradient needs a single-output program".into(),
            ));
        }
        let mut b = SlpBuilder::new(self.inputs);
        let args: Vec<Node> = (0..self.inputs).map(|i| b.input(i)).collect();
        // forward sweep, recording the node of each original instruction
        let mut fwd = Vec::with_capacity(self.instrs.len());
        for ins in &self.instrs {
            let node = match ins {
                Instr::Input(i) => args[*i],
                Instr::Const(c) => b.constant(c.clone()),
                Instr::Add(x, y) => b.add(fwd[*x], fwd[*y]),
                Instr::Sub(x, y) => b.sub(fwd[*x], fwd[*y]),
                Instr::Mul(x, y) => b.mul(fwd[*x], fwd[*y]),
            };
            fwd.push(node);
        }
        let out = self.outputs[0];
        let mut adj: Vec<Option<Node>> = vec![None; self.instrs.len()];
        adj[out] = Some(b.constant(Rat::one()));
        // `None` adjoints are structurally zero and generate no code
        let accumulate = |b: &mut SlpBuilder, slot: &mut Option<Node>, term: Node| {
            *slot = Some(match *slot {
                None => term,
                Some(prev) => b.add(prev, term),
            });
        };
        let mut grad: Vec<Option<Node>> = vec![None; self.inputs];
        for k in (0..=out).rev() {
            let Some(a) = adj[k] else { continue };
            match &self.instrs[k] {
                Instr::Input(i) => {
                    let mut slot = grad[*i];
                    accumulate(&mut b, &mut slot, a);
                    grad[*i] = slot;
                }
                Instr::Const(_) => {}
                Instr::Add(x, y) => {
                    let (x, y) = (*x, *y);
                    let mut sx = adj[x];
                    accumulate(&mut b, &mut sx, a);
                    adj[x] = sx;
                    let mut sy = adj[y];
                    accumulate(&mut b, &mut sy, a);
                    adj[y] = sy;
                }
                Instr::Sub(x, y) => {
                    let (x, y) = (*x, *y);
                    let mut sx = adj[x];
                    accumulate(&mut b, &mut sx, a);
                    adj[x] = sx;
                    adj[y] = Some(match adj[y] {
                        None => b.neg(a),
                        Some(prev) => b.sub(prev, a),
                    });
                }
                Instr::Mul(x, y) => {
                    let (x, y) = (*x, *y);
                    let tx = b.mul(a, fwd[y]);
                    let mut sx = adj[x];
                    accumulate(&mut b, &mut sx, tx);
                    adj[x] = sx;
                    let ty = b.mul(a, fwd[x]);
                    let mut sy = adj[y];
                    accumulate(&mut b, &mut sy, ty);
                    adj[y] = sy;
                }
            }
        }
        let mut outs = vec![fwd[out]];
        for g in grad {
            outs.push(match g {
                Some(n) => n,
                None => b.constant(Rat::zero()),
            });
        }
        Ok(b.build(&outs))
    }

    /// Dense form of every output of `f(v_1(u), ..., v_n(u)) mod p(u)`.
    pub fn compose_univariate(&self, v: &[UPoly], p: &UPoly) -> Result<Vec<UPoly>> {
        if v.len() != self.inputs {
            return Err(Error::InvalidInput(format!(
                "program expects {} inputs, got {}",
                self.inputs,
                v.len()
            )));
        }
        let modulus = Arc::new(p.clone());
        let like = QuotElem::new(&UPoly::one(), &modulus);
        let point: Vec<QuotElem> = v.iter().map(|vj| QuotElem::new(vj, &modulus)).collect();
        Ok(self
            .eval(&point, &like)?
            .into_iter()
            .map(QuotElem::into_rep)
            .collect())
    }

    /// Syntactic upper bound on the total degree of each output.
    pub fn degree_bounds(&self) -> Vec<usize> {
        let mut deg: Vec<usize> = Vec::with_capacity(self.instrs.len());
        for ins in &self.instrs {
            let d = match ins {
                Instr::Input(_) => 1,
                Instr::Const(_) => 0,
                Instr::Add(a, b) | Instr::Sub(a, b) => deg[*a].max(deg[*b]),
                Instr::Mul(a, b) => deg[*a] + deg[*b],
            };
            deg.push(d);
        }
        self.outputs.iter().map(|&o| deg[o]).collect()
    }
}
