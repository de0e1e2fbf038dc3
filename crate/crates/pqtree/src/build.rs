//! Incremental consecutive-ones reduction with the classic templates. Trees
//! are rebuilt by value for each constraint, which costs linear time per
//! constraint instead of the amortised bound of the pointer-based version.

use crate::{NodeKind, PqNode, PqTree};

#[derive(Debug, Clone)]
enum T {
    Leaf(usize),
    P(Vec<T>),
    Q(Vec<T>),
}

enum Out {
    Empty(T),
    Full(T),
    /// Children of a partial node, empty ones first, full ones last.
    Partial(Vec<T>),
}

#[derive(Debug)]
pub(crate) struct Infeasible;

fn count(t: &T, s: &[bool]) -> usize {
    match t {
        T::Leaf(c) => s[*c] as usize,
        T::P(ch) | T::Q(ch) => ch.iter().map(|c| count(c, s)).sum(),
    }
}

fn group(mut nodes: Vec<T>) -> Option<T> {
    match nodes.len() {
        0 => None,
        1 => nodes.pop(),
        _ => Some(T::P(nodes)),
    }
}

fn q_node(children: Vec<T>) -> T {
    if children.len() == 2 {
        T::P(children)
    } else {
        T::Q(children)
    }
}

enum St {
    E,
    F,
    P,
}

fn status(o: &Out) -> St {
    match o {
        Out::Empty(_) => St::E,
        Out::Full(_) => St::F,
        Out::Partial(_) => St::P,
    }
}

/// Children outcomes, or the whole node when it is uniformly empty or full.
fn split_children(ch: Vec<T>, s: &[bool]) -> Result<Result<Vec<Out>, Out>, Infeasible> {
    let outs: Vec<Out> = ch.into_iter().map(|c| reduce_below(c, s)).collect::<Result<_, _>>()?;
    let all_full = outs.iter().all(|o| matches!(o, Out::Full(_)));
    let all_empty = outs.iter().all(|o| matches!(o, Out::Empty(_)));
    if all_full || all_empty {
        Ok(Err(outs_into_uniform(outs, all_full)))
    } else {
        Ok(Ok(outs))
    }
}

fn outs_into_uniform(outs: Vec<Out>, full: bool) -> Out {
    // Only reached for the children of a single node, so the caller rebuilds
    // the node kind; a placeholder P is replaced there.
    let nodes: Vec<T> = outs
        .into_iter()
        .map(|o| match o {
            Out::Empty(t) | Out::Full(t) => t,
            Out::Partial(_) => unreachable!("uniform children"),
        })
        .collect();
    if full {
        Out::Full(T::P(nodes))
    } else {
        Out::Empty(T::P(nodes))
    }
}

fn rekind(o: Out, q: bool) -> Out {
    let fix = |t: T| match (t, q) {
        (T::P(ch), true) => T::Q(ch),
        (t, _) => t,
    };
    match o {
        Out::Empty(t) => Out::Empty(fix(t)),
        Out::Full(t) => Out::Full(fix(t)),
        p => p,
    }
}

fn partition(outs: Vec<Out>) -> (Vec<T>, Vec<T>, Vec<Vec<T>>) {
    let (mut e, mut f, mut p) = (Vec::new(), Vec::new(), Vec::new());
    for o in outs {
        match o {
            Out::Empty(t) => e.push(t),
            Out::Full(t) => f.push(t),
            Out::Partial(seq) => p.push(seq),
        }
    }
    (e, f, p)
}

/// Pattern `E* P? F*` over the child statuses.
fn singly_partial_pattern(st: &[St]) -> bool {
    let mut i = 0;
    while i < st.len() && matches!(st[i], St::E) {
        i += 1;
    }
    if i < st.len() && matches!(st[i], St::P) {
        i += 1;
    }
    while i < st.len() && matches!(st[i], St::F) {
        i += 1;
    }
    i == st.len()
}

fn flatten(outs: Vec<Out>) -> Vec<T> {
    let mut seq = Vec::new();
    for o in outs {
        match o {
            Out::Empty(t) | Out::Full(t) => seq.push(t),
            Out::Partial(p) => seq.extend(p),
        }
    }
    seq
}

/// Processes a node strictly below the pertinent root.
fn reduce_below(t: T, s: &[bool]) -> Result<Out, Infeasible> {
    match t {
        T::Leaf(c) => Ok(if s[c] { Out::Full(T::Leaf(c)) } else { Out::Empty(T::Leaf(c)) }),
        T::P(ch) => {
            let outs = match split_children(ch, s)? {
                Ok(outs) => outs,
                Err(uniform) => return Ok(uniform),
            };
            let (e, f, mut p) = partition(outs);
            if p.len() > 1 {
                return Err(Infeasible);
            }
            let mut seq: Vec<T> = group(e).into_iter().collect();
            if let Some(part) = p.pop() {
                seq.extend(part);
            }
            seq.extend(group(f));
            Ok(Out::Partial(seq))
        }
        T::Q(ch) => {
            let mut outs = match split_children(ch, s)? {
                Ok(outs) => outs,
                Err(uniform) => return Ok(rekind(uniform, true)),
            };
            let mut st: Vec<St> = outs.iter().map(status).collect();
            if !singly_partial_pattern(&st) {
                outs.reverse();
                st.reverse();
                if !singly_partial_pattern(&st) {
                    return Err(Infeasible);
                }
            }
            Ok(Out::Partial(flatten(outs)))
        }
    }
}

/// Processes the pertinent root, the deepest node holding every marked leaf.
fn reduce_root(t: T, s: &[bool]) -> Result<T, Infeasible> {
    match t {
        T::Leaf(c) => Ok(T::Leaf(c)),
        T::P(ch) => {
            let outs = match split_children(ch, s)? {
                Ok(outs) => outs,
                Err(Out::Full(t)) | Err(Out::Empty(t)) => return Ok(t),
                Err(Out::Partial(_)) => unreachable!(),
            };
            let (mut e, f, p) = partition(outs);
            let merged = match p.len() {
                0 => {
                    e.extend(group(f));
                    return Ok(T::P(e));
                }
                1 => {
                    let mut seq = p.into_iter().next().unwrap();
                    seq.extend(group(f));
                    q_node(seq)
                }
                2 => {
                    let mut it = p.into_iter();
                    let mut seq = it.next().unwrap();
                    seq.extend(group(f));
                    let mut tail = it.next().unwrap();
                    tail.reverse();
                    seq.extend(tail);
                    q_node(seq)
                }
                _ => return Err(Infeasible),
            };
            if e.is_empty() {
                Ok(merged)
            } else {
                e.push(merged);
                Ok(T::P(e))
            }
        }
        T::Q(ch) => {
            let outs = match split_children(ch, s)? {
                Ok(outs) => outs,
                Err(Out::Full(T::P(ch))) | Err(Out::Empty(T::P(ch))) => return Ok(T::Q(ch)),
                Err(_) => unreachable!(),
            };
            let st: Vec<St> = outs.iter().map(status).collect();
            let first = st.iter().position(|x| !matches!(x, St::E)).ok_or(Infeasible)?;
            let last = st.iter().rposition(|x| !matches!(x, St::E)).ok_or(Infeasible)?;
            for (i, x) in st.iter().enumerate().take(last + 1).skip(first) {
                let edge = i == first || i == last;
                match x {
                    St::F => {}
                    St::P if edge && first != last => {}
                    _ => return Err(Infeasible),
                }
            }
            let mut seq = Vec::new();
            for (i, o) in outs.into_iter().enumerate() {
                match o {
                    Out::Empty(t) | Out::Full(t) => seq.push(t),
                    Out::Partial(mut part) => {
                        if i == last {
                            part.reverse();
                        }
                        seq.extend(part);
                    }
                }
            }
            Ok(T::Q(seq))
        }
    }
}

fn reduce_in_place(t: &mut T, s: &[bool], size: usize) -> Result<(), Infeasible> {
    if let T::P(ch) | T::Q(ch) = t {
        if let Some(i) = ch.iter().position(|c| count(c, s) == size) {
            return reduce_in_place(&mut ch[i], s, size);
        }
    }
    let owned = std::mem::replace(t, T::Leaf(usize::MAX));
    *t = reduce_root(owned, s)?;
    Ok(())
}

/// Builds the tree whose frontiers are exactly the orderings of `0..leaves`
/// in which every constraint set is consecutive.
pub(crate) fn consecutive_tree(leaves: usize, constraints: &[Vec<usize>]) -> Result<PqTree, Infeasible> {
    let mut tree = match leaves {
        0 => return Ok(PqTree { nodes: Vec::new(), root: None, cliques: Vec::new() }),
        1 => T::Leaf(0),
        _ => T::P((0..leaves).map(T::Leaf).collect()),
    };
    let mut mark = vec![false; leaves];
    for c in constraints {
        if c.len() <= 1 || c.len() >= leaves {
            continue;
        }
        for &x in c {
            mark[x] = true;
        }
        reduce_in_place(&mut tree, &mark, c.len())?;
        for &x in c {
            mark[x] = false;
        }
    }
    let mut out = PqTree { nodes: Vec::new(), root: None, cliques: Vec::new() };
    let root = push(&mut out, tree, None);
    out.root = Some(root);
    Ok(out)
}

fn push(out: &mut PqTree, t: T, parent: Option<usize>) -> usize {
    let id = out.nodes.len();
    let (kind, children) = match t {
        T::Leaf(c) => (NodeKind::Leaf(c), Vec::new()),
        T::P(ch) => (NodeKind::P, ch),
        T::Q(ch) => (NodeKind::Q, ch),
    };
    out.nodes.push(PqNode { kind, children: Vec::new(), parent });
    let ids: Vec<usize> = children.into_iter().map(|c| push(out, c, Some(id))).collect();
    out.nodes[id].children = ids;
    id
}
