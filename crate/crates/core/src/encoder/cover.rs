//! Multisets of columns that give every target a prescribed weight.
//!
//! Both the shortest error-correcting generator and the shortest classical
//! code reduce to this: pick `len` columns (with repetition) from a candidate
//! list so that every target `t` ends with `base[t] + #{chosen c : hits(c, t)}`
//! at least `need`.

use crate::error::{Error, Result};

pub(crate) struct Cover {
    /// `hits[c]` lists the targets column `c` contributes to.
    pub hits: Vec<Vec<u32>>,
    pub base: Vec<usize>,
    pub need: usize,
}

impl Cover {
    /// Calls `visit` on every qualifying multiset of size `len` (candidate
    /// indices, nondecreasing, lexicographic order) until it returns false.
    /// Returns whether the enumeration ran to completion.
    pub fn search(&self, len: usize, node_limit: u64, visit: &mut dyn FnMut(&[usize]) -> bool) -> Result<bool> {
        let mut st = State {
            cover: self,
            weight: self.base.clone(),
            chosen: Vec::with_capacity(len),
            nodes: 0,
            node_limit,
        };
        st.go(len, 0, visit)
    }
}

struct State<'a> {
    cover: &'a Cover,
    weight: Vec<usize>,
    chosen: Vec<usize>,
    nodes: u64,
    node_limit: u64,
}

impl State<'_> {
    fn go(&mut self, len: usize, from: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::budget(
                "column search",
                format!("> {} nodes", self.node_limit),
                self.node_limit,
            ));
        }
        let remaining = len - self.chosen.len();
        let need = self.cover.need;
        let Some(worst) = self.weight.iter().copied().min() else {
            return Ok(self.finish(len, from, visit));
        };
        if worst + remaining < need {
            return Ok(true);
        }
        if remaining == 0 {
            return Ok(visit(&self.chosen));
        }
        for c in from..self.cover.hits.len() {
            for &t in &self.cover.hits[c] {
                self.weight[t as usize] += 1;
            }
            self.chosen.push(c);
            let go_on = self.go(len, c, visit);
            self.chosen.pop();
            for &t in &self.cover.hits[c] {
                self.weight[t as usize] -= 1;
            }
            if !go_on? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// No targets at all: every multiset qualifies.
    fn finish(&mut self, len: usize, from: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if self.chosen.len() == len {
            return visit(&self.chosen);
        }
        for c in from..self.cover.hits.len() {
            self.chosen.push(c);
            let go_on = self.finish(len, c, visit);
            self.chosen.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
}
