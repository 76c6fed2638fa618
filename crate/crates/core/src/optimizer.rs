//! Gate-count reduction for Toffoli cascades.
//!
//! Every rule here is either a syntactic identity that is checked
//! exhaustively in the test suite (commutation, pair removal, polarity
//! merge) or is validated by simulation before it is used (templates,
//! control trimming).

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::{Control, ToffoliGate};
use crate::simulator::{gates_equivalent, realized_spec};

/// Largest template arity accepted; validation enumerates `2^arity` inputs.
pub const MAX_TEMPLATE_ARITY: usize = 10;

/// How far ahead the template matcher and control trimmer look for the
/// next gate of a match.
const MATCH_WINDOW: usize = 64;

/// Sufficient condition for `gh = hg`: neither gate's target is a control
/// of the other.
pub fn gates_commute(g: &ToffoliGate, h: &ToffoliGate) -> Result<bool> {
    if g.width() != h.width() {
        return Err(Error::WidthMismatch {
            left: g.width(),
            right: h.width(),
        });
    }
    Ok(commute(g, h))
}

#[inline]
fn commute(g: &ToffoliGate, h: &ToffoliGate) -> bool {
    h.control_mask() >> g.target() & 1 == 0 && g.control_mask() >> h.target() & 1 == 0
}

/// Deletes pairs of identical gates whose intervening gates all commute
/// with them, until none remain.
pub fn remove_useless_pairs(circuit: &Circuit) -> Circuit {
    let mut gates = circuit.gates().to_vec();
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < gates.len() {
            let g = gates[i];
            let partner = gates[i + 1..]
                .iter()
                .position(|h| *h == g || !commute(&g, h))
                .map(|off| i + 1 + off)
                .filter(|&j| gates[j] == g);
            match partner {
                Some(j) => {
                    gates.remove(j);
                    gates.remove(i);
                    changed = true;
                }
                None => i += 1,
            }
        }
        if !changed {
            return Circuit::from_parts_unchecked(circuit.width(), gates);
        }
    }
}

/// `T(C,x:t) T(C,x':t) = T(C:t)`: same target, same controls except one
/// line present in both with opposite polarity.
pub fn merge_adjacent(g: &ToffoliGate, h: &ToffoliGate) -> Option<ToffoliGate> {
    if g.width() != h.width() || g.target() != h.target() {
        return None;
    }
    if g.control_mask() != h.control_mask() {
        return None;
    }
    let flipped = g.pos_mask() ^ h.pos_mask();
    if flipped.count_ones() != 1 {
        return None;
    }
    Some(g.without_control(flipped.trailing_zeros() as usize))
}

fn merge_pass(circuit: &Circuit) -> Circuit {
    let mut out: Vec<ToffoliGate> = Vec::with_capacity(circuit.len());
    for &g in circuit.gates() {
        match out.last().and_then(|last| merge_adjacent(last, &g)) {
            Some(m) => {
                out.pop();
                out.push(m);
            }
            None => out.push(g),
        }
    }
    Circuit::from_parts_unchecked(circuit.width(), out)
}

/// A rewrite between two equivalent cascades over abstract lines
/// `0..arity`. The replacement is strictly shorter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template {
    name: String,
    pattern: Circuit,
    replacement: Circuit,
}

/// True iff both cascades agree on all `2^arity` inputs.
pub fn validate_template(pattern: &Circuit, replacement: &Circuit) -> Result<bool> {
    let arity = pattern.width();
    if arity > MAX_TEMPLATE_ARITY {
        return Err(Error::ArityTooLarge(arity));
    }
    if replacement.width() != arity {
        return Err(Error::WidthMismatch {
            left: arity,
            right: replacement.width(),
        });
    }
    Ok(gates_equivalent(pattern.gates(), replacement.gates(), arity))
}

impl Template {
    /// Registers a template, refusing it unless it is equivalent, shorter,
    /// and its replacement only uses lines that the pattern binds.
    pub fn new(name: impl Into<String>, pattern: Circuit, replacement: Circuit) -> Result<Self> {
        let name = name.into();
        if pattern.is_empty() {
            return Err(Error::InvalidTemplate(format!("{name}: empty pattern")));
        }
        if !validate_template(&pattern, &replacement)? {
            return Err(Error::InvalidTemplate(format!(
                "{name}: pattern and replacement differ"
            )));
        }
        if replacement.len() >= pattern.len() {
            return Err(Error::InvalidTemplate(format!(
                "{name}: replacement is not shorter than the pattern"
            )));
        }
        let bound = pattern.gates().iter().fold(0, |m, g| m | g.support_mask());
        let used = replacement.gates().iter().fold(0, |m, g| m | g.support_mask());
        if used & !bound != 0 {
            return Err(Error::InvalidTemplate(format!(
                "{name}: replacement uses lines absent from the pattern"
            )));
        }
        Ok(Template {
            name,
            pattern,
            replacement,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.pattern.width()
    }

    pub fn pattern(&self) -> &Circuit {
        &self.pattern
    }

    pub fn replacement(&self) -> &Circuit {
        &self.replacement
    }

    /// Re-runs the equivalence check.
    pub fn validate(&self) -> Result<bool> {
        validate_template(&self.pattern, &self.replacement)
    }
}

/// The built-in rewrite set: pair cancellation, polarity merge (both
/// orders) and NOT conjugation `T(:x) T(C,x:t) T(:x) = T(C,x':t)` for up to
/// three further controls.
pub fn builtin_templates() -> Vec<Template> {
    let g = |w: usize, t: usize, cs: &[Control]| ToffoliGate::new(w, t, cs).expect("well-formed builtin");
    let circ = |w: usize, gs: Vec<ToffoliGate>| Circuit::new(w, gs).expect("well-formed builtin");
    let mut out = Vec::new();

    out.push(
        Template::new(
            "pair-cancel",
            circ(1, vec![g(1, 0, &[]), g(1, 0, &[])]),
            circ(1, vec![]),
        )
        .expect("valid builtin"),
    );
    for (first, name) in [(true, "merge"), (false, "merge-rev")] {
        let x = |pos: bool| Control { line: 1, positive: pos };
        out.push(
            Template::new(
                name,
                circ(2, vec![g(2, 0, &[x(first)]), g(2, 0, &[x(!first)])]),
                circ(2, vec![g(2, 0, &[])]),
            )
            .expect("valid builtin"),
        );
    }
    for extra in 0..=3usize {
        let arity = 2 + extra;
        for negatives in 0..=extra {
            let rest: Vec<Control> = (0..extra)
                .map(|i| Control {
                    line: 2 + i,
                    positive: i >= negatives,
                })
                .collect();
            for x_pos in [true, false] {
                let with_x = |pos: bool| {
                    let mut cs = rest.clone();
                    cs.push(Control { line: 1, positive: pos });
                    cs
                };
                let pattern = circ(
                    arity,
                    vec![
                        g(arity, 1, &[]),
                        g(arity, 0, &with_x(x_pos)),
                        g(arity, 1, &[]),
                    ],
                );
                let replacement = circ(arity, vec![g(arity, 0, &with_x(!x_pos))]);
                let name = format!("not-conjugation/{extra}/{negatives}/{}", if x_pos { "p" } else { "n" });
                out.push(Template::new(name, pattern, replacement).expect("valid builtin"));
            }
        }
    }
    out
}

/// Partial assignment of abstract template lines to concrete lines, plus
/// the extra controls shared by every matched gate.
#[derive(Debug, Clone, Copy)]
struct Binding {
    map: [u8; MAX_TEMPLATE_ARITY],
    /// Concrete lines taken by the map or by the extra controls.
    taken: u32,
    extra: Option<(u32, u32)>,
}

const UNBOUND: u8 = u8::MAX;

impl Binding {
    fn new() -> Self {
        Binding {
            map: [UNBOUND; MAX_TEMPLATE_ARITY],
            taken: 0,
            extra: None,
        }
    }

    fn bind(&mut self, abs: usize, concrete: usize) -> bool {
        match self.map[abs] {
            UNBOUND => {
                if self.taken >> concrete & 1 == 1 {
                    return false;
                }
                self.map[abs] = concrete as u8;
                self.taken |= 1 << concrete;
                true
            }
            c => c as usize == concrete,
        }
    }
}

/// All ways of extending `binding` so that abstract gate `p` maps onto
/// concrete gate `g`.
fn match_gate(p: &ToffoliGate, g: &ToffoliGate, binding: Binding, out: &mut Vec<Binding>) {
    let mut b = binding;
    if !b.bind(p.target(), g.target()) {
        return;
    }
    let controls: Vec<Control> = p.controls().collect();
    bind_controls(&controls, g, b, 0, 0, out);
}

fn bind_controls(
    controls: &[Control],
    g: &ToffoliGate,
    b: Binding,
    used_pos: u32,
    used_neg: u32,
    out: &mut Vec<Binding>,
) {
    let Some((c, rest)) = controls.split_first() else {
        let extra = (g.pos_mask() & !used_pos, g.neg_mask() & !used_neg);
        let mut b = b;
        match b.extra {
            None => {
                if (extra.0 | extra.1) & b.taken != 0 {
                    return;
                }
                b.taken |= extra.0 | extra.1;
                b.extra = Some(extra);
            }
            Some(e) if e == extra => {}
            Some(_) => return,
        }
        out.push(b);
        return;
    };
    let candidates = if c.positive { g.pos_mask() } else { g.neg_mask() };
    let avail = candidates & !(used_pos | used_neg);
    match b.map[c.line] {
        UNBOUND => {
            for line in 0..g.width() {
                if avail >> line & 1 == 1 {
                    let mut nb = b;
                    if nb.bind(c.line, line) {
                        let (up, un) = mark(c.positive, line, used_pos, used_neg);
                        bind_controls(rest, g, nb, up, un, out);
                    }
                }
            }
        }
        line => {
            let line = line as usize;
            if avail >> line & 1 == 1 {
                let (up, un) = mark(c.positive, line, used_pos, used_neg);
                bind_controls(rest, g, b, up, un, out);
            }
        }
    }
}

fn mark(positive: bool, line: usize, pos: u32, neg: u32) -> (u32, u32) {
    if positive {
        (pos | 1 << line, neg)
    } else {
        (pos, neg | 1 << line)
    }
}

/// Finds pattern gates `k..` after position `after`, each commuting left
/// past the unmatched gates that precede it (back to the first match).
fn search(
    pattern: &[ToffoliGate],
    k: usize,
    gates: &[ToffoliGate],
    first: usize,
    after: usize,
    matched: &mut Vec<usize>,
    binding: Binding,
) -> Option<Binding> {
    if k == pattern.len() {
        return Some(binding);
    }
    let end = gates.len().min(after + 1 + MATCH_WINDOW);
    let mut candidates = Vec::new();
    for j in after + 1..end {
        let g = &gates[j];
        let movable = (first + 1..j)
            .filter(|i| !matched.contains(i))
            .all(|i| commute(g, &gates[i]));
        if movable {
            candidates.clear();
            match_gate(&pattern[k], g, binding, &mut candidates);
            for &b in &candidates {
                matched.push(j);
                if let Some(done) = search(pattern, k + 1, gates, first, j, matched, b) {
                    return Some(done);
                }
                matched.pop();
            }
        }
        // Every later match carries the extra controls; a skipped gate
        // writing one of them blocks all of them.
        if let Some((ep, en)) = binding.extra {
            if (ep | en) >> g.target() & 1 == 1 {
                break;
            }
        }
    }
    None
}

fn instantiate(t: &Template, binding: &Binding, width: usize) -> Vec<ToffoliGate> {
    let (ep, en) = binding.extra.unwrap_or((0, 0));
    t.replacement
        .gates()
        .iter()
        .map(|r| {
            let mut pos = ep;
            let mut neg = en;
            for c in r.controls() {
                let line = binding.map[c.line] as usize;
                if c.positive {
                    pos |= 1 << line;
                } else {
                    neg |= 1 << line;
                }
            }
            ToffoliGate::from_masks_unchecked(width, binding.map[r.target()] as usize, pos, neg)
        })
        .collect()
}

/// Tries to rewrite one occurrence of `t` whose first gate is at `i`.
fn rewrite_at(gates: &[ToffoliGate], i: usize, t: &Template, width: usize) -> Option<Vec<ToffoliGate>> {
    let pattern = t.pattern.gates();
    let mut starts = Vec::new();
    match_gate(&pattern[0], &gates[i], Binding::new(), &mut starts);
    for b in starts {
        let mut matched = vec![i];
        if let Some(done) = search(pattern, 1, gates, i, i, &mut matched, b) {
            let last = *matched.iter().max().expect("non-empty match");
            let mut out = Vec::with_capacity(gates.len());
            out.extend_from_slice(&gates[..i]);
            out.extend(instantiate(t, &done, width));
            out.extend((i..=last).filter(|j| !matched.contains(j)).map(|j| gates[j]));
            out.extend_from_slice(&gates[last + 1..]);
            return Some(out);
        }
    }
    None
}

/// Slides every template over the circuit, bringing matched gates together
/// by commuting moves, until no template applies or `max_passes` is hit.
///
/// A match may carry extra controls on lines outside the binding, common to
/// every matched gate; they are added to the replacement gates as well.
pub fn apply_templates(circuit: &Circuit, templates: &[Template], max_passes: usize) -> Circuit {
    let width = circuit.width();
    let mut gates = circuit.gates().to_vec();
    for _ in 0..max_passes.max(1) {
        let mut changed = false;
        let mut i = 0;
        while i < gates.len() {
            let rewritten = templates
                .iter()
                .filter(|t| t.arity() <= width)
                .find_map(|t| rewrite_at(&gates, i, t, width));
            match rewritten {
                Some(next) => {
                    gates = next;
                    changed = true;
                }
                None => i += 1,
            }
        }
        if !changed {
            break;
        }
    }
    Circuit::from_parts_unchecked(width, gates)
}

/// Exhaustive check restricted to the lines the two segments touch.
fn segments_equivalent(a: &[ToffoliGate], b: &[ToffoliGate]) -> bool {
    let support = a.iter().chain(b).fold(0u32, |m, g| m | g.support_mask());
    let lines: Vec<u32> = (0..32).filter(|l| support >> l & 1 == 1).collect();
    (0..1u32 << lines.len()).all(|assign| {
        let x = lines
            .iter()
            .enumerate()
            .fold(0u32, |acc, (i, &l)| acc | ((assign >> i & 1) << l));
        let run = |gs: &[ToffoliGate]| gs.iter().fold(x, |v, g| g.apply_value(v));
        run(a) == run(b)
    })
}

/// Removes one control from both gates of an identical pair when the
/// enclosed segment stays equivalent, e.g.
/// `T(a,c:b) T(b,c:a) T(a,c:b) -> T(a:b) T(b,c:a) T(a:b)`.
/// Gate count is unchanged; total control count drops.
pub fn trim_controls(circuit: &Circuit) -> Circuit {
    let mut gates = circuit.gates().to_vec();
    let mut i = 0;
    while i < gates.len() {
        let g = gates[i];
        let end = gates.len().min(i + 1 + MATCH_WINDOW);
        let mut trimmed = false;
        'pairs: for j in i + 1..end {
            if gates[j] != g {
                continue;
            }
            for c in g.controls() {
                let h = g.without_control(c.line);
                let mut seg = gates[i..=j].to_vec();
                seg[0] = h;
                *seg.last_mut().expect("pair") = h;
                if segments_equivalent(&gates[i..=j], &seg) {
                    gates[i] = h;
                    gates[j] = h;
                    trimmed = true;
                    break 'pairs;
                }
            }
        }
        if !trimmed {
            i += 1;
        }
    }
    Circuit::from_parts_unchecked(circuit.width(), gates)
}

#[derive(Debug, Clone)]
pub struct OptimizeConfig {
    pub enable_pair_removal: bool,
    pub enable_merge: bool,
    pub enable_control_trim: bool,
    pub templates: Vec<Template>,
    pub max_passes: usize,
}

impl Default for OptimizeConfig {
    fn default() -> Self {
        OptimizeConfig {
            enable_pair_removal: true,
            enable_merge: true,
            enable_control_trim: true,
            templates: builtin_templates(),
            max_passes: 32,
        }
    }
}

/// Runs pair removal, adjacent merging, template rewriting and control
/// trimming in turn until a full pass changes nothing. Gate count never
/// increases.
pub fn optimize(circuit: &Circuit, config: &OptimizeConfig) -> Circuit {
    let mut current = circuit.clone();
    for _ in 0..config.max_passes.max(1) {
        let mut next = current.clone();
        if config.enable_pair_removal {
            next = remove_useless_pairs(&next);
        }
        if config.enable_merge {
            next = merge_pass(&next);
        }
        if !config.templates.is_empty() {
            next = apply_templates(&next, &config.templates, 1);
        }
        if config.enable_control_trim {
            next = trim_controls(&next);
        }
        debug_assert!(next.len() <= current.len());
        if next == current {
            break;
        }
        current = next;
    }
    if circuit.width() <= MAX_TEMPLATE_ARITY {
        debug_assert_eq!(realized_spec(&current).ok(), realized_spec(circuit).ok());
    } else {
        log::info!(
            "skipping equivalence assertion for {}-line circuit",
            circuit.width()
        );
    }
    current
}
