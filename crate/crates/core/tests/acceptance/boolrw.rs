//! Closed boolean terms and an exhaustive rewriter for them, written
//! against the rule table directly rather than through the kernel.

use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    T,
    F,
    Not(u32),
    And(u32, u32),
    Or(u32, u32),
    /// `ifte bool c t e`
    Ite(u32, u32, u32),
}

#[derive(Default)]
pub struct Terms {
    nodes: Vec<Node>,
    ids: HashMap<Node, u32>,
    /// Bit 0: reaches `true`; bit 1: reaches `false`; bit 2: reaches some
    /// other normal form. `IN_PROGRESS` marks terms on the current path.
    nfs: Vec<u8>,
}

pub const NF_TRUE: u8 = 1;
pub const NF_FALSE: u8 = 2;
pub const NF_OTHER: u8 = 4;
const UNKNOWN: u8 = 0;
const IN_PROGRESS: u8 = 0x80;

#[derive(Debug)]
pub struct Cycle(pub u32);

impl Terms {
    pub fn new() -> Self {
        Terms::default()
    }

    pub fn intern(&mut self, n: Node) -> u32 {
        if let Some(&i) = self.ids.get(&n) {
            return i;
        }
        let i = self.nodes.len() as u32;
        self.nodes.push(n);
        self.nfs.push(UNKNOWN);
        self.ids.insert(n, i);
        i
    }

    pub fn node(&self, i: u32) -> Node {
        self.nodes[i as usize]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// Every closed term of each size up to `max`, by size. `ifte`'s type
    /// argument counts as one node.
    pub fn enumerate(&mut self, max: usize) -> Vec<Vec<u32>> {
        let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); max + 1];
        if max >= 1 {
            by_size[1] = vec![self.intern(Node::T), self.intern(Node::F)];
        }
        for s in 2..=max {
            let mut out = Vec::new();
            for &a in &by_size[s - 1] {
                out.push(self.intern(Node::Not(a)));
            }
            for sa in 1..s - 1 {
                let sb = s - 1 - sa;
                for ia in 0..by_size[sa].len() {
                    for ib in 0..by_size[sb].len() {
                        let (a, b) = (by_size[sa][ia], by_size[sb][ib]);
                        out.push(self.intern(Node::And(a, b)));
                        out.push(self.intern(Node::Or(a, b)));
                    }
                }
            }
            for sc in 1..s {
                for st in 1..s {
                    if sc + st + 2 >= s {
                        continue;
                    }
                    let se = s - 2 - sc - st;
                    for &c in &by_size[sc] {
                        for &t in &by_size[st] {
                            for &e in &by_size[se] {
                                out.push(self.intern(Node::Ite(c, t, e)));
                            }
                        }
                    }
                }
            }
            by_size[s] = out;
        }
        by_size
    }

    fn root_reducts(&mut self, i: u32, out: &mut Vec<u32>) {
        use Node::*;
        match self.node(i) {
            T | F => {}
            Not(x) => match self.node(x) {
                T => out.push(self.intern(F)),
                F => out.push(self.intern(T)),
                Not(y) => out.push(y),
                Or(p, q) => {
                    let (np, nq) = (self.intern(Not(p)), self.intern(Not(q)));
                    out.push(self.intern(And(np, nq)));
                }
                And(p, q) => {
                    let (np, nq) = (self.intern(Not(p)), self.intern(Not(q)));
                    out.push(self.intern(Or(np, nq)));
                }
                Ite(..) => {}
            },
            And(a, b) => {
                let (na, nb) = (self.node(a), self.node(b));
                if na == T {
                    out.push(b);
                }
                if nb == T {
                    out.push(a);
                }
                if na == F || nb == F {
                    out.push(self.intern(F));
                }
                if a == b {
                    out.push(a);
                }
                if let And(b1, c) = nb {
                    let ab = self.intern(And(a, b1));
                    out.push(self.intern(And(ab, c)));
                }
                if let Or(b1, c) = nb {
                    let (ab, ac) = (self.intern(And(a, b1)), self.intern(And(a, c)));
                    out.push(self.intern(Or(ab, ac)));
                }
                if let Or(a1, a2) = na {
                    let (x, y) = (self.intern(And(a1, b)), self.intern(And(a2, b)));
                    out.push(self.intern(Or(x, y)));
                }
            }
            Or(a, b) => {
                let (na, nb) = (self.node(a), self.node(b));
                if na == T || nb == T {
                    out.push(self.intern(T));
                }
                if na == F {
                    out.push(b);
                }
                if nb == F {
                    out.push(a);
                }
                if a == b {
                    out.push(a);
                }
                if let Or(b1, c) = nb {
                    let ab = self.intern(Or(a, b1));
                    out.push(self.intern(Or(ab, c)));
                }
            }
            Ite(c, t, e) => match self.node(c) {
                T => out.push(t),
                F => out.push(e),
                _ => {}
            },
        }
    }

    /// The boolean a closed term denotes.
    pub fn eval(&self, i: u32) -> bool {
        use Node::*;
        match self.node(i) {
            T => true,
            F => false,
            Not(x) => !self.eval(x),
            And(a, b) => self.eval(a) && self.eval(b),
            Or(a, b) => self.eval(a) || self.eval(b),
            Ite(c, t, e) => {
                if self.eval(c) {
                    self.eval(t)
                } else {
                    self.eval(e)
                }
            }
        }
    }

    /// Every term one rewrite step away from `i`, at any position.
    pub fn reducts(&mut self, i: u32, out: &mut Vec<u32>) {
        use Node::*;
        self.root_reducts(i, out);
        let mut sub = Vec::new();
        match self.node(i) {
            T | F => {}
            Not(x) => {
                self.reducts(x, &mut sub);
                for y in sub {
                    out.push(self.intern(Not(y)));
                }
            }
            And(a, b) | Or(a, b) => {
                let and = matches!(self.node(i), And(..));
                let mk = |s: &mut Self, x, y| s.intern(if and { And(x, y) } else { Or(x, y) });
                self.reducts(a, &mut sub);
                for x in std::mem::take(&mut sub) {
                    out.push(mk(self, x, b));
                }
                self.reducts(b, &mut sub);
                for y in sub {
                    out.push(mk(self, a, y));
                }
            }
            Ite(c, t, e) => {
                self.reducts(c, &mut sub);
                for x in std::mem::take(&mut sub) {
                    out.push(self.intern(Ite(x, t, e)));
                }
                self.reducts(t, &mut sub);
                for x in std::mem::take(&mut sub) {
                    out.push(self.intern(Ite(c, x, e)));
                }
                self.reducts(e, &mut sub);
                for x in sub {
                    out.push(self.intern(Ite(c, t, x)));
                }
            }
        }
    }

    /// The normal forms reachable from `i` by any sequence of steps, as a
    /// bit set.
    pub fn normal_forms(&mut self, i: u32) -> Result<u8, Cycle> {
        match self.nfs[i as usize] {
            UNKNOWN => {}
            IN_PROGRESS => return Err(Cycle(i)),
            known => return Ok(known),
        }
        self.nfs[i as usize] = IN_PROGRESS;
        let mut rs = Vec::new();
        self.reducts(i, &mut rs);
        let mut set = 0;
        if rs.is_empty() {
            set = match self.node(i) {
                Node::T => NF_TRUE,
                Node::F => NF_FALSE,
                _ => NF_OTHER,
            };
        }
        rs.sort_unstable();
        rs.dedup();
        for r in rs {
            set |= self.normal_forms(r)?;
        }
        self.nfs[i as usize] = set;
        Ok(set)
    }
}
