//! Text specifications for groups and subgroups.
//!
//! Groups: `S<n>`, `A<n>`, `C<n>`, `D<n>` (order 2n), products of those
//! joined with `x`, or `perm:` followed by comma-separated permutations in
//! cycle notation. Subgroups: `gens:<perms>` (empty list for the trivial
//! subgroup), `stab:<k>` for a 1-based point stabilizer in the natural
//! action, `sylow:<p>`, and `core:<spec>` wrapping any of these in the
//! normal core.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{is_prime, FiniteGroup, SubgroupHandle, DEFAULT_ORDER_BOUND};
use crate::gset::GSet;
use crate::perm::{parse_cycle_list, Permutation};

/// Guards against huge point sets sneaking past the order bound.
pub const MAX_FAMILY_PARAMETER: usize = 2520;

#[derive(Clone, Debug)]
pub struct GroupSpec {
    text: String,
    group: FiniteGroup,
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<GroupSpec> {
        GroupSpec::parse_bounded(text, DEFAULT_ORDER_BOUND)
    }

    pub fn parse_bounded(text: &str, bound: usize) -> Result<GroupSpec> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(Error::parse(0, "empty group specification"));
        }
        let group = if let Some(rest) = trimmed.strip_prefix("perm:") {
            parse_generated_group(rest, 5, bound)?
        } else {
            parse_family_product(trimmed, bound)?
        };
        Ok(GroupSpec {
            text: trimmed.to_string(),
            group,
        })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupKind {
    Generators(Vec<String>),
    PointStabilizer(usize),
    Sylow(u32),
    Core(Box<SubgroupKind>),
}

#[derive(Clone, Debug)]
pub struct SubgroupSpec {
    text: String,
    kind: SubgroupKind,
}

impl SubgroupSpec {
    pub fn parse(text: &str) -> Result<SubgroupSpec> {
        let trimmed = text.trim();
        let kind = parse_subgroup_kind(trimmed, 0)?;
        Ok(SubgroupSpec {
            text: trimmed.to_string(),
            kind,
        })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    /// Builds the subgroup inside a concrete group.
    pub fn resolve(&self, group: &FiniteGroup) -> Result<SubgroupHandle> {
        resolve_kind(&self.kind, group)
    }
}

impl fmt::Display for SubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

fn parse_subgroup_kind(text: &str, base: usize) -> Result<SubgroupKind> {
    if let Some(rest) = text.strip_prefix("gens:") {
        let pieces = split_top_level_commas(rest, base + 5);
        let mut kept = Vec::new();
        for (at, piece) in pieces {
            if piece.trim().is_empty() {
                if pieces_empty_allowed(rest) {
                    continue;
                }
                return Err(Error::parse(at, "empty permutation in generator list"));
            }
            // validate the syntax now; the group degree is applied later
            parse_cycle_list(piece).map_err(|e| shift_parse_error(e, at))?;
            kept.push(piece.to_string());
        }
        return Ok(SubgroupKind::Generators(kept));
    }
    if let Some(rest) = text.strip_prefix("stab:") {
        let point: usize = rest
            .trim()
            .parse()
            .map_err(|_| Error::parse(base + 5, "expected a point number after stab:"))?;
        if point == 0 {
            return Err(Error::parse(base + 5, "points are numbered from 1"));
        }
        return Ok(SubgroupKind::PointStabilizer(point));
    }
    if let Some(rest) = text.strip_prefix("sylow:") {
        let prime: u32 = rest
            .trim()
            .parse()
            .map_err(|_| Error::parse(base + 6, "expected a prime after sylow:"))?;
        if !is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        return Ok(SubgroupKind::Sylow(prime));
    }
    if let Some(rest) = text.strip_prefix("core:") {
        return Ok(SubgroupKind::Core(Box::new(parse_subgroup_kind(
            rest,
            base + 5,
        )?)));
    }
    Err(Error::parse(
        base,
        "expected gens:, stab:, sylow:, or core:",
    ))
}

/// `gens:` with nothing after it means the trivial subgroup; a comma with a
/// blank side never does.
fn pieces_empty_allowed(rest: &str) -> bool {
    rest.trim().is_empty()
}

fn resolve_kind(kind: &SubgroupKind, group: &FiniteGroup) -> Result<SubgroupHandle> {
    match kind {
        SubgroupKind::Generators(pieces) => {
            let mut perms = Vec::new();
            for piece in pieces {
                perms.push(permutation_in_degree(piece, group.degree())?);
            }
            group.subgroup_closure(&perms)
        }
        SubgroupKind::PointStabilizer(point) => {
            if *point > group.degree() {
                return Err(Error::parse(
                    0,
                    format!(
                        "stab point {point} exceeds the group degree {}",
                        group.degree()
                    ),
                ));
            }
            Ok(GSet::natural(group).point_stabilizer((*point - 1) as u32))
        }
        SubgroupKind::Sylow(prime) => Ok(sylow_subgroup(group, *prime)),
        SubgroupKind::Core(inner) => Ok(resolve_kind(inner, group)?.normal_core()),
    }
}

fn permutation_in_degree(piece: &str, degree: usize) -> Result<Permutation> {
    let cycles = parse_cycle_list(piece)?;
    let max_point = cycles
        .iter()
        .flat_map(|c| c.iter())
        .map(|&p| p as usize + 1)
        .max()
        .unwrap_or(0);
    if max_point > degree {
        return Err(Error::NotAnElement);
    }
    Permutation::from_cycles(&cycles, degree.max(1))
}

/// The Sylow p-subgroup reached by always adjoining the least p-element of
/// the current normalizer, which makes the choice reproducible. Any
/// p-element normalizing a p-group generates a p-group with it, so no
/// closure ever overshoots.
fn sylow_subgroup(group: &FiniteGroup, prime: u32) -> SubgroupHandle {
    let p = prime as usize;
    let mut p_part = 1usize;
    let mut rest = group.order();
    while rest % p == 0 {
        rest /= p;
        p_part *= p;
    }
    let mut current = group.trivial_subgroup();
    while current.order() < p_part {
        let normalizer = current.normalizer();
        let next = normalizer
            .ids()
            .iter()
            .copied()
            .find(|&x| !current.contains_id(x) && is_p_power(group.element(x).order(), p))
            .expect("a p-group below the Sylow order grows inside its normalizer");
        let mut seed = current.ids().to_vec();
        seed.push(next);
        current = group.subgroup_closure_ids(&seed);
    }
    current
}

fn is_p_power(mut n: usize, p: usize) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

fn parse_family_product(text: &str, bound: usize) -> Result<FiniteGroup> {
    let mut offset = 0;
    let mut blocks: Vec<(usize, Vec<Permutation>)> = Vec::new();
    for factor in text.split('x') {
        let (degree, gens) = parse_family(factor, offset)?;
        blocks.push((degree, gens));
        offset += factor.len() + 1;
    }
    let total: usize = blocks.iter().map(|(d, _)| d).sum();
    let mut generators = Vec::new();
    let mut shift = 0u32;
    for (degree, gens) in blocks {
        for gen in gens {
            let mut images: Vec<u32> = (0..total as u32).collect();
            for (i, &img) in gen.images().iter().enumerate() {
                images[shift as usize + i] = shift + img;
            }
            generators.push(Permutation::from_images(images)?);
        }
        shift += degree as u32;
    }
    FiniteGroup::generate_bounded(total.max(1), &generators, bound)
}

/// One family factor: the letter, then a decimal parameter.
fn parse_family(factor: &str, at: usize) -> Result<(usize, Vec<Permutation>)> {
    if factor.is_empty() {
        return Err(Error::parse(at, "empty family factor"));
    }
    let letter = factor.chars().next().unwrap();
    let digits = &factor[letter.len_utf8()..];
    if !matches!(letter, 'S' | 'A' | 'C' | 'D') {
        return Err(Error::UnsupportedFamily(factor.to_string()));
    }
    let n: usize = digits.parse().map_err(|_| {
        Error::parse(
            at + 1,
            format!("expected a number after the family letter, got {digits:?}"),
        )
    })?;
    if n == 0 {
        return Err(Error::parse(at + 1, "family parameter must be at least 1"));
    }
    if n > MAX_FAMILY_PARAMETER {
        return Err(Error::parse(
            at + 1,
            format!("family parameter exceeds the limit {MAX_FAMILY_PARAMETER}"),
        ));
    }
    let spec = match letter {
        'S' => symmetric_generators(n),
        'A' => alternating_generators(n),
        'C' => cyclic_generators(n),
        'D' => dihedral_generators(n),
        _ => unreachable!(),
    };
    Ok(spec)
}

fn full_cycle(n: usize) -> Vec<u32> {
    (1..=n as u32).collect()
}

fn symmetric_generators(n: usize) -> (usize, Vec<Permutation>) {
    match n {
        1 => (1, Vec::new()),
        2 => (2, vec![cycles_perm(&[vec![1, 2]], 2)]),
        _ => (
            n,
            vec![
                cycles_perm(&[full_cycle(n)], n),
                cycles_perm(&[vec![1, 2]], n),
            ],
        ),
    }
}

fn alternating_generators(n: usize) -> (usize, Vec<Permutation>) {
    if n <= 2 {
        return (n.max(1), Vec::new());
    }
    let gens = (1..=n as u32 - 2)
        .map(|i| cycles_perm(&[vec![i, i + 1, i + 2]], n))
        .collect();
    (n, gens)
}

fn cyclic_generators(n: usize) -> (usize, Vec<Permutation>) {
    if n == 1 {
        return (1, Vec::new());
    }
    (n, vec![cycles_perm(&[full_cycle(n)], n)])
}

/// The dihedral group of order 2n. For n below 3 a faithful representation
/// needs extra points: D1 is a transposition, D2 the Klein group on two
/// blocks.
fn dihedral_generators(n: usize) -> (usize, Vec<Permutation>) {
    match n {
        1 => (2, vec![cycles_perm(&[vec![1, 2]], 2)]),
        2 => (
            4,
            vec![
                cycles_perm(&[vec![1, 2]], 4),
                cycles_perm(&[vec![3, 4]], 4),
            ],
        ),
        _ => {
            let reflection: Vec<Vec<u32>> = (2..=(n as u32 + 1) / 2)
                .map(|i| vec![i, n as u32 + 2 - i])
                .filter(|pair| pair[0] != pair[1])
                .collect();
            (
                n,
                vec![
                    cycles_perm(&[full_cycle(n)], n),
                    cycles_perm(&reflection, n),
                ],
            )
        }
    }
}

fn cycles_perm(cycles: &[Vec<u32>], degree: usize) -> Permutation {
    let zero_based: Vec<Vec<u32>> = cycles
        .iter()
        .map(|c| c.iter().map(|&p| p - 1).collect())
        .collect();
    Permutation::from_cycles(&zero_based, degree).expect("family generator tables are well formed")
}

/// The group generated by explicitly listed permutations, acting on points
/// up to the largest one mentioned.
fn parse_generated_group(rest: &str, base: usize, bound: usize) -> Result<FiniteGroup> {
    let pieces = split_top_level_commas(rest, base);
    let mut cycle_lists = Vec::new();
    let mut max_point = 0u32;
    for (at, piece) in &pieces {
        if piece.trim().is_empty() {
            return Err(Error::parse(*at, "expected a permutation in cycle notation"));
        }
        let cycles = parse_cycle_list(piece).map_err(|e| shift_parse_error(e, *at))?;
        for cycle in &cycles {
            for &point in cycle {
                max_point = max_point.max(point);
            }
        }
        cycle_lists.push(cycles);
    }
    if cycle_lists.is_empty() {
        return Err(Error::parse(base, "expected at least one permutation"));
    }
    let degree = max_point as usize + 1;
    let generators: Result<Vec<Permutation>> = cycle_lists
        .iter()
        .map(|cycles| Permutation::from_cycles(cycles, degree))
        .collect();
    FiniteGroup::generate_bounded(degree, &generators?, bound)
}

/// Splits on commas outside parentheses, reporting each piece's byte offset
/// in the original text.
fn split_top_level_commas(text: &str, base: usize) -> Vec<(usize, &str)> {
    let mut pieces = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                pieces.push((base + start, &text[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    if !text.is_empty() {
        pieces.push((base + start, &text[start..]));
    }
    pieces
}

fn shift_parse_error(err: Error, base: usize) -> Error {
    match err {
        Error::Parse { position, message } => Error::Parse {
            position: position + base,
            message,
        },
        other => other,
    }
}
