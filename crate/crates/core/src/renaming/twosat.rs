//! 2-SAT through the implication graph and Tarjan's strongly connected
//! components (iterative, so deep graphs cannot overflow the stack).

/// A literal: variable index with polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(usize);

impl Lit {
    pub fn pos(v: usize) -> Lit {
        Lit(2 * v)
    }

    pub fn neg(v: usize) -> Lit {
        Lit(2 * v + 1)
    }

    pub fn new(v: usize, positive: bool) -> Lit {
        if positive {
            Lit::pos(v)
        } else {
            Lit::neg(v)
        }
    }

    pub fn var(self) -> usize {
        self.0 / 2
    }

    pub fn is_positive(self) -> bool {
        self.0 % 2 == 0
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }

    /// Truth value under a model.
    pub fn eval(self, model: &[bool]) -> bool {
        model[self.var()] == self.is_positive()
    }
}

#[derive(Debug, Clone, Default)]
pub struct TwoSat {
    vars: usize,
    clauses: Vec<(Lit, Lit)>,
}

impl TwoSat {
    pub fn new(vars: usize) -> TwoSat {
        TwoSat { vars, clauses: Vec::new() }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn clauses(&self) -> &[(Lit, Lit)] {
        &self.clauses
    }

    /// Adds the clause `a ∨ b`.
    pub fn add_clause(&mut self, a: Lit, b: Lit) {
        assert!(a.var() < self.vars && b.var() < self.vars, "literal out of range");
        self.clauses.push((a, b));
    }

    /// `a ⇔ b`.
    pub fn add_equiv(&mut self, a: Lit, b: Lit) {
        self.add_clause(a.not(), b);
        self.add_clause(a, b.not());
    }

    /// `a ⊕ b`.
    pub fn add_xor(&mut self, a: Lit, b: Lit) {
        self.add_clause(a, b);
        self.add_clause(a.not(), b.not());
    }

    /// A satisfying model, or `None` if unsatisfiable. The model is a
    /// deterministic function of the clause list.
    pub fn solve(&self) -> Option<Vec<bool>> {
        let nodes = 2 * self.vars;
        let mut adj = vec![Vec::new(); nodes];
        for &(a, b) in &self.clauses {
            adj[a.not().0].push(b.0);
            adj[b.not().0].push(a.0);
        }
        let comp = tarjan(&adj);
        let mut model = Vec::with_capacity(self.vars);
        for v in 0..self.vars {
            let (p, n) = (comp[Lit::pos(v).0], comp[Lit::neg(v).0]);
            if p == n {
                return None;
            }
            // Tarjan numbers components in reverse topological order.
            model.push(p < n);
        }
        Some(model)
    }
}

/// Component id per node; ids follow completion order, i.e. reverse
/// topological order of the condensation. Roots are visited as ¬x₀, x₀,
/// ¬x₁, x₁, ...
fn tarjan(adj: &[Vec<usize>]) -> Vec<usize> {
    const UNSEEN: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut counter = 0;
    let mut comps = 0;
    let roots = (0..n / 2).flat_map(|v| [2 * v + 1, 2 * v]);
    for root in roots {
        if index[root] != UNSEEN {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut next)) = call.last_mut() {
            if *next < adj[v].len() {
                let w = adj[v][*next];
                *next += 1;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("component on stack");
                    on_stack[w] = false;
                    comp[w] = comps;
                    if w == v {
                        break;
                    }
                }
                comps += 1;
            }
        }
    }
    comp
}
