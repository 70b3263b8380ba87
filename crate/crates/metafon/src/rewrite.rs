//! Ordered string-rewrite engine; the phonetic algorithms are data tables.
//!
//! A [`RuleSet`] is an ordered list of [`RewriteRule`]s. Rules fire in list
//! order, exactly once through the list. Within one rule, replacement runs in
//! left-to-right, non-overlapping passes and repeats until the rule no longer
//! changes the string (its fixpoint). When several patterns of one rule match
//! at the same position, the longest wins.
//!
//! Rule order is significant. The soft-sign removal rule must come after the
//! consonant-cluster rules, or the cluster patterns can never match again;
//! [`RuleSet::lint`] reports that kind of ordering hazard so a table can be
//! audited before it ships.

use std::collections::HashMap;
use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

/// Where a rule is allowed to match.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Anchor {
    None,
    WordEnd,
}

impl Anchor {
    fn as_str(self) -> &'static str {
        match self {
            Anchor::None => "none",
            Anchor::WordEnd => "word-end",
        }
    }
}

/// Pattern shape of one rewrite step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleKind {
    /// One fixed pattern replaced by a fixed string (possibly empty).
    Literal {
        pattern: String,
        replacement: String,
    },
    /// Any pattern of the set replaced by the same fixed string.
    SetToOne {
        patterns: Vec<String>,
        replacement: String,
    },
    /// A leading character from `mapping` is rewritten when the next
    /// character is in `following`; the follower is kept. This is the shape
    /// of voicing assimilation, and it expands to an explicit pair table.
    ClassPair {
        mapping: Vec<(char, char)>,
        following: Vec<char>,
    },
    /// Any run of one repeated character collapses to a single copy.
    Dedup,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    kind: RuleKind,
    anchor: Anchor,
}

impl RewriteRule {
    pub fn literal(pattern: &str, replacement: &str) -> Self {
        RewriteRule {
            kind: RuleKind::Literal {
                pattern: pattern.to_string(),
                replacement: replacement.to_string(),
            },
            anchor: Anchor::None,
        }
    }

    pub fn literal_at_end(pattern: &str, replacement: &str) -> Self {
        RewriteRule {
            anchor: Anchor::WordEnd,
            ..Self::literal(pattern, replacement)
        }
    }

    pub fn set_to_one(patterns: &[&str], replacement: &str) -> Self {
        RewriteRule {
            kind: RuleKind::SetToOne {
                patterns: patterns.iter().map(|p| p.to_string()).collect(),
                replacement: replacement.to_string(),
            },
            anchor: Anchor::None,
        }
    }

    pub fn set_to_one_at_end(patterns: &[&str], replacement: &str) -> Self {
        RewriteRule {
            anchor: Anchor::WordEnd,
            ..Self::set_to_one(patterns, replacement)
        }
    }

    pub fn class_pair(mapping: &[(char, char)], following: &[char]) -> Self {
        RewriteRule {
            kind: RuleKind::ClassPair {
                mapping: mapping.to_vec(),
                following: following.to_vec(),
            },
            anchor: Anchor::None,
        }
    }

    pub fn dedup() -> Self {
        RewriteRule {
            kind: RuleKind::Dedup,
            anchor: Anchor::None,
        }
    }

    pub fn kind(&self) -> &RuleKind {
        &self.kind
    }

    pub fn anchor(&self) -> Anchor {
        self.anchor
    }

    /// Every source pattern of this rule, class pairs expanded.
    pub fn patterns(&self) -> Vec<String> {
        match &self.kind {
            RuleKind::Literal { pattern, .. } => vec![pattern.clone()],
            RuleKind::SetToOne { patterns, .. } => patterns.clone(),
            RuleKind::ClassPair { mapping, following } => mapping
                .iter()
                .flat_map(|&(from, _)| following.iter().map(move |&f| format!("{from}{f}")))
                .collect(),
            RuleKind::Dedup => Vec::new(),
        }
    }

    fn replacements(&self) -> Vec<String> {
        match &self.kind {
            RuleKind::Literal { replacement, .. } | RuleKind::SetToOne { replacement, .. } => {
                vec![replacement.clone()]
            }
            RuleKind::ClassPair { mapping, following } => mapping
                .iter()
                .flat_map(|&(_, to)| following.iter().map(move |&f| format!("{to}{f}")))
                .collect(),
            RuleKind::Dedup => Vec::new(),
        }
    }

    /// One left-to-right replacement pass; `None` when nothing matched.
    fn pass(&self, chars: &[char]) -> Option<Vec<char>> {
        match (&self.kind, self.anchor) {
            (RuleKind::Dedup, _) => {
                let mut out = Vec::with_capacity(chars.len());
                let mut changed = false;
                for &c in chars {
                    if out.last() == Some(&c) {
                        changed = true;
                    } else {
                        out.push(c);
                    }
                }
                changed.then_some(out)
            }
            (RuleKind::ClassPair { mapping, following }, _) => {
                let mut out = Vec::with_capacity(chars.len());
                let mut changed = false;
                let mut i = 0;
                while i < chars.len() {
                    let mapped = mapping.iter().find(|(from, _)| *from == chars[i]);
                    match mapped {
                        Some(&(_, to))
                            if i + 1 < chars.len() && following.contains(&chars[i + 1]) =>
                        {
                            out.push(to);
                            out.push(chars[i + 1]);
                            i += 2;
                            changed = true;
                        }
                        _ => {
                            out.push(chars[i]);
                            i += 1;
                        }
                    }
                }
                changed.then_some(out)
            }
            (
                RuleKind::Literal {
                    pattern,
                    replacement,
                },
                Anchor::None,
            ) => scan_replace(chars, std::slice::from_ref(pattern), replacement),
            (
                RuleKind::SetToOne {
                    patterns,
                    replacement,
                },
                Anchor::None,
            ) => scan_replace(chars, patterns, replacement),
            (
                RuleKind::Literal {
                    pattern,
                    replacement,
                },
                Anchor::WordEnd,
            ) => suffix_replace(chars, std::slice::from_ref(pattern), replacement),
            (
                RuleKind::SetToOne {
                    patterns,
                    replacement,
                },
                Anchor::WordEnd,
            ) => suffix_replace(chars, patterns, replacement),
        }
    }

    /// Applies the rule to fixpoint.
    ///
    /// Every rule of the built-in tables is non-expanding, so the fixpoint is
    /// reached within `chars + 2` passes; the cap only cuts off expanding
    /// rules, which [`RuleSet::lint`] flags.
    pub fn apply(&self, input: &str) -> String {
        let mut cur: Vec<char> = input.chars().collect();
        let cap = cur.len() + 2;
        for _ in 0..cap {
            match self.pass(&cur) {
                Some(next) if next != cur => cur = next,
                _ => break,
            }
        }
        cur.into_iter().collect()
    }
}

fn starts_with_pattern(chars: &[char], pattern: &str) -> bool {
    let mut i = 0;
    for pc in pattern.chars() {
        if chars.get(i) != Some(&pc) {
            return false;
        }
        i += 1;
    }
    i > 0
}

// leftmost scan, longest pattern wins at each position, non-overlapping
fn scan_replace(chars: &[char], patterns: &[String], replacement: &str) -> Option<Vec<char>> {
    let mut out = Vec::with_capacity(chars.len());
    let mut matched = false;
    let mut i = 0;
    while i < chars.len() {
        let best = patterns
            .iter()
            .filter(|p| starts_with_pattern(&chars[i..], p))
            .max_by_key(|p| p.chars().count());
        match best {
            Some(p) => {
                out.extend(replacement.chars());
                i += p.chars().count();
                matched = true;
            }
            None => {
                out.push(chars[i]);
                i += 1;
            }
        }
    }
    matched.then_some(out)
}

fn suffix_replace(chars: &[char], patterns: &[String], replacement: &str) -> Option<Vec<char>> {
    let best = patterns
        .iter()
        .filter(|p| {
            let plen = p.chars().count();
            plen > 0 && plen <= chars.len() && starts_with_pattern(&chars[chars.len() - plen..], p)
        })
        .max_by_key(|p| p.chars().count())?;
    let plen = best.chars().count();
    let mut out: Vec<char> = chars[..chars.len() - plen].to_vec();
    out.extend(replacement.chars());
    Some(out)
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let end = match self.anchor {
            Anchor::None => "",
            Anchor::WordEnd => " at word end",
        };
        match &self.kind {
            RuleKind::Literal {
                pattern,
                replacement,
            } if replacement.is_empty() => {
                write!(f, "drop '{pattern}'{end}")
            }
            RuleKind::Literal {
                pattern,
                replacement,
            } => {
                write!(f, "'{pattern}' -> '{replacement}'{end}")
            }
            RuleKind::SetToOne {
                patterns,
                replacement,
            } => {
                write!(f, "{{{}}} -> '{replacement}'{end}", patterns.join(", "))
            }
            RuleKind::ClassPair { mapping, following } => {
                let pairs: Vec<String> = mapping.iter().map(|(a, b)| format!("{a}->{b}")).collect();
                let follow: String = following.iter().collect();
                write!(f, "{} before [{follow}]", pairs.join(", "))
            }
            RuleKind::Dedup => write!(f, "collapse repeated characters"),
        }
    }
}

/// One fired rule in a [`RewriteTrace`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    /// Zero-based index into the rule list.
    pub rule: usize,
    pub before: String,
    pub after: String,
}

/// The record of every rule that changed the string, in firing order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RewriteTrace {
    steps: Vec<TraceStep>,
}

impl RewriteTrace {
    pub fn steps(&self) -> &[TraceStep] {
        &self.steps
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    /// Replays the trace from `input`, checking step continuity. Returns the
    /// final string, or `None` if the trace does not belong to that input.
    pub fn replay(&self, input: &str) -> Option<String> {
        let mut cur = input.to_string();
        for step in &self.steps {
            if step.before != cur {
                return None;
            }
            cur = step.after.clone();
        }
        Some(cur)
    }
}

/// An ordering or reachability hazard found by [`RuleSet::lint`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LintWarning {
    /// The pattern contains a character that an earlier rule deletes from
    /// every string, so the pattern can never match.
    Unreachable {
        rule: usize,
        pattern: String,
        ch: char,
        removed_by: usize,
    },
    /// The replacement reintroduces a character that an earlier rule was
    /// responsible for deleting.
    Reintroduced {
        rule: usize,
        ch: char,
        removed_by: usize,
    },
    /// An earlier word-end pattern is a suffix of this one and always fires
    /// first, so this pattern can never match.
    ShadowedEnding {
        rule: usize,
        pattern: String,
        by_rule: usize,
        by_pattern: String,
    },
    /// The replacement is longer than the pattern; the fixpoint iteration cap
    /// may cut such a rule off.
    Expanding { rule: usize, pattern: String },
}

impl fmt::Display for LintWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LintWarning::Unreachable {
                rule,
                pattern,
                ch,
                removed_by,
            } => write!(
                f,
                "rule {}: pattern '{pattern}' unreachable ('{ch}' is removed by rule {})",
                rule + 1,
                removed_by + 1
            ),
            LintWarning::Reintroduced {
                rule,
                ch,
                removed_by,
            } => write!(
                f,
                "rule {}: replacement reintroduces '{ch}' removed by rule {}",
                rule + 1,
                removed_by + 1
            ),
            LintWarning::ShadowedEnding {
                rule,
                pattern,
                by_rule,
                by_pattern,
            } => write!(
                f,
                "rule {}: word-end pattern '{pattern}' shadowed by '{by_pattern}' of rule {}",
                rule + 1,
                by_rule + 1
            ),
            LintWarning::Expanding { rule, pattern } => write!(
                f,
                "rule {}: replacement for '{pattern}' is longer than the pattern",
                rule + 1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {msg}")]
pub struct TableError {
    pub line: usize,
    pub msg: String,
}

/// A named, ordered list of rewrite rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    name: String,
    rules: Vec<RewriteRule>,
}

impl RuleSet {
    pub fn new(name: impl Into<String>, rules: Vec<RewriteRule>) -> Self {
        RuleSet {
            name: name.into(),
            rules,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Runs every rule once, each to its fixpoint, in list order.
    pub fn apply(&self, input: &str) -> String {
        let mut cur = input.to_string();
        for rule in &self.rules {
            cur = rule.apply(&cur);
        }
        cur
    }

    /// Like [`RuleSet::apply`], also recording each rule that fired.
    pub fn apply_traced(&self, input: &str) -> (String, RewriteTrace) {
        let mut cur = input.to_string();
        let mut steps = Vec::new();
        for (i, rule) in self.rules.iter().enumerate() {
            let next = rule.apply(&cur);
            if next != cur {
                steps.push(TraceStep {
                    rule: i,
                    before: cur,
                    after: next.clone(),
                });
                cur = next;
            }
        }
        (cur, RewriteTrace { steps })
    }

    /// Like [`RuleSet::apply`], adding each rule's wall-clock cost to `acc`.
    /// `acc` must have one slot per rule.
    pub fn apply_timed(&self, input: &str, acc: &mut [Duration]) -> String {
        assert_eq!(acc.len(), self.rules.len(), "one duration slot per rule");
        let mut cur = input.to_string();
        for (i, rule) in self.rules.iter().enumerate() {
            let started = Instant::now();
            cur = rule.apply(&cur);
            acc[i] += started.elapsed();
        }
        cur
    }

    /// Static audit of the table: reachability under earlier deletions,
    /// reintroduced characters, shadowed word-end patterns and expanding
    /// replacements.
    pub fn lint(&self) -> Vec<LintWarning> {
        let mut warnings = Vec::new();
        // char -> index of the rule that deletes it from every string
        let mut removed: HashMap<char, usize> = HashMap::new();

        for (i, rule) in self.rules.iter().enumerate() {
            for pattern in rule.patterns() {
                if let Some(ch) = pattern.chars().find(|c| removed.contains_key(c)) {
                    warnings.push(LintWarning::Unreachable {
                        rule: i,
                        pattern: pattern.clone(),
                        ch,
                        removed_by: removed[&ch],
                    });
                }
            }
            for replacement in rule.replacements() {
                for ch in replacement.chars() {
                    if let Some(&by) = removed.get(&ch) {
                        warnings.push(LintWarning::Reintroduced {
                            rule: i,
                            ch,
                            removed_by: by,
                        });
                        removed.remove(&ch);
                    }
                }
            }
            if let RuleKind::Literal { replacement, .. } | RuleKind::SetToOne { replacement, .. } =
                &rule.kind
            {
                pattern_expansion_check(i, &rule.patterns(), replacement, &mut warnings);
                // a one-character pattern with an empty replacement deletes
                // that character from every string downstream
                if replacement.is_empty() && rule.anchor == Anchor::None {
                    for pattern in rule.patterns() {
                        let mut it = pattern.chars();
                        if let (Some(ch), None) = (it.next(), it.next()) {
                            removed.entry(ch).or_insert(i);
                        }
                    }
                }
            }
        }

        // earlier word-end pattern that is a suffix of a later one always
        // fires first, leaving the later pattern unreachable
        let ends: Vec<(usize, String)> = self
            .rules
            .iter()
            .enumerate()
            .filter(|(_, r)| r.anchor == Anchor::WordEnd)
            .flat_map(|(i, r)| r.patterns().into_iter().map(move |p| (i, p)))
            .collect();
        for (a, (rule_a, pat_a)) in ends.iter().enumerate() {
            for (rule_b, pat_b) in ends.iter().skip(a + 1) {
                if rule_b != rule_a && pat_b.ends_with(pat_a.as_str()) {
                    warnings.push(LintWarning::ShadowedEnding {
                        rule: *rule_b,
                        pattern: pat_b.clone(),
                        by_rule: *rule_a,
                        by_pattern: pat_a.clone(),
                    });
                }
            }
        }

        warnings
    }

    /// Renders the table in the plain-text exchange format, one rule per
    /// line: kind, pattern, replacement, anchor (tab-separated).
    ///
    /// Class-pair rules list `from:to` pairs in the pattern column and the
    /// trigger characters in the replacement column.
    pub fn to_table(&self) -> String {
        let mut out = format!("# ruleset: {}\n", self.name);
        for rule in &self.rules {
            let (kind, pattern, replacement) = match &rule.kind {
                RuleKind::Literal {
                    pattern,
                    replacement,
                } => ("literal", pattern.clone(), replacement.clone()),
                RuleKind::SetToOne {
                    patterns,
                    replacement,
                } => ("set-to-one", patterns.join("|"), replacement.clone()),
                RuleKind::ClassPair { mapping, following } => (
                    "char-class-pair",
                    mapping
                        .iter()
                        .map(|(a, b)| format!("{a}:{b}"))
                        .collect::<Vec<_>>()
                        .join("|"),
                    following
                        .iter()
                        .map(char::to_string)
                        .collect::<Vec<_>>()
                        .join("|"),
                ),
                RuleKind::Dedup => ("dedup", String::new(), String::new()),
            };
            out.push_str(&format!(
                "{kind}\t{pattern}\t{replacement}\t{}\n",
                rule.anchor.as_str()
            ));
        }
        out
    }

    /// Parses a table produced by [`RuleSet::to_table`]. Blank lines and
    /// `#` comments are skipped.
    pub fn from_table(name: impl Into<String>, src: &str) -> Result<Self, TableError> {
        let mut rules = Vec::new();
        for (n, raw) in src.lines().enumerate() {
            let line_no = n + 1;
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 4 {
                return Err(TableError {
                    line: line_no,
                    msg: format!("expected 4 tab-separated fields, got {}", fields.len()),
                });
            }
            let anchor = match fields[3] {
                "none" => Anchor::None,
                "word-end" => Anchor::WordEnd,
                other => {
                    return Err(TableError {
                        line: line_no,
                        msg: format!("unknown anchor '{other}'"),
                    })
                }
            };
            let kind = match fields[0] {
                "literal" => RuleKind::Literal {
                    pattern: fields[1].to_string(),
                    replacement: fields[2].to_string(),
                },
                "set-to-one" => RuleKind::SetToOne {
                    patterns: fields[1].split('|').map(str::to_string).collect(),
                    replacement: fields[2].to_string(),
                },
                "char-class-pair" | "class-pair" => {
                    let mut mapping = Vec::new();
                    for pair in fields[1].split('|') {
                        let mut chars = pair.chars();
                        match (chars.next(), chars.next(), chars.next(), chars.next()) {
                            (Some(from), Some(':'), Some(to), None) => mapping.push((from, to)),
                            _ => {
                                return Err(TableError {
                                    line: line_no,
                                    msg: format!("malformed class pair '{pair}'"),
                                })
                            }
                        }
                    }
                    let following: Vec<char> = fields[2]
                        .split('|')
                        .filter_map(|s| s.chars().next())
                        .collect();
                    RuleKind::ClassPair { mapping, following }
                }
                "dedup" => RuleKind::Dedup,
                other => {
                    return Err(TableError {
                        line: line_no,
                        msg: format!("unknown rule kind '{other}'"),
                    })
                }
            };
            if let RuleKind::Literal { pattern, .. } = &kind {
                if pattern.is_empty() {
                    return Err(TableError {
                        line: line_no,
                        msg: "empty pattern".to_string(),
                    });
                }
            }
            rules.push(RewriteRule { kind, anchor });
        }
        Ok(RuleSet::new(name, rules))
    }
}

fn pattern_expansion_check(
    rule: usize,
    patterns: &[String],
    replacement: &str,
    warnings: &mut Vec<LintWarning>,
) {
    let rep_len = replacement.chars().count();
    for pattern in patterns {
        if rep_len > pattern.chars().count() {
            warnings.push(LintWarning::Expanding {
                rule,
                pattern: pattern.clone(),
            });
        }
    }
}
