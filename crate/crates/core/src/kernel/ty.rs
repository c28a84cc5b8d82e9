//! Phase- and stage-indexed object types.

use std::fmt;

/// Whether a term is pre-staging source or post-staging residue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    Src,
    Stg,
}

/// The layer a type lives in. `Sta` is only legal in the `Src` phase.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stage {
    Sta,
    Dyn,
}

impl Stage {
    /// Is this stage available in the given phase?
    pub fn legal_in(self, phase: Phase) -> bool {
        !(self == Stage::Sta && phase == Phase::Stg)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Src => "src",
            Phase::Stg => "stg",
        })
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Sta => "sta",
            Stage::Dyn => "dyn",
        })
    }
}

/// An object type. Every node carries the phase and stage it lives at.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ty {
    pub phase: Phase,
    pub stage: Stage,
    pub kind: TyKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TyKind {
    Base,
    Nat,
    Bool,
    Arrow(Box<Ty>, Box<Ty>),
    /// Type of programs computing a dynamic value of the inner type.
    Lift(Box<Ty>),
    Prod(Box<Ty>, Box<Ty>),
    /// Circuit with the given input and output arities.
    Circ(usize, usize),
}

/// Reasons a type node breaks its index constraints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TyFault {
    /// `Sta` used in the `Stg` phase.
    IllegalStage,
    /// Static-only former (Bool, Prod, Lift) at a dynamic stage or staged phase.
    StaticOnly,
    /// Circuit type at the static stage.
    DynamicOnly,
    /// Arrow whose domain or codomain disagrees with the arrow's indices.
    HeterogeneousArrow,
    /// Lift whose payload is not a source-phase dynamic type.
    BadLiftPayload,
}

impl fmt::Display for TyFault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TyFault::IllegalStage => "the static stage does not exist in the staged phase",
            TyFault::StaticOnly => "type former is only available at (src, sta)",
            TyFault::DynamicOnly => "circuit types are only available at the dynamic stage",
            TyFault::HeterogeneousArrow => "arrow domain and codomain must live at the arrow's stage",
            TyFault::BadLiftPayload => "lifted type must be a source dynamic type",
        })
    }
}

impl Ty {
    pub fn base(phase: Phase, stage: Stage) -> Ty {
        Ty { phase, stage, kind: TyKind::Base }
    }

    pub fn nat(phase: Phase, stage: Stage) -> Ty {
        Ty { phase, stage, kind: TyKind::Nat }
    }

    pub fn bool() -> Ty {
        Ty { phase: Phase::Src, stage: Stage::Sta, kind: TyKind::Bool }
    }

    /// Arrow at the domain's indices.
    pub fn arrow(dom: Ty, cod: Ty) -> Ty {
        Ty {
            phase: dom.phase,
            stage: dom.stage,
            kind: TyKind::Arrow(Box::new(dom), Box::new(cod)),
        }
    }

    pub fn lift(inner: Ty) -> Ty {
        Ty { phase: Phase::Src, stage: Stage::Sta, kind: TyKind::Lift(Box::new(inner)) }
    }

    pub fn prod(left: Ty, right: Ty) -> Ty {
        Ty {
            phase: Phase::Src,
            stage: Stage::Sta,
            kind: TyKind::Prod(Box::new(left), Box::new(right)),
        }
    }

    pub fn circ(phase: Phase, inputs: usize, outputs: usize) -> Ty {
        Ty { phase, stage: Stage::Dyn, kind: TyKind::Circ(inputs, outputs) }
    }

    /// Right-nested arrow `a1 -> a2 -> ... -> res`.
    pub fn arrows(args: impl IntoIterator<Item = Ty>, res: Ty) -> Ty {
        let args: Vec<Ty> = args.into_iter().collect();
        args.into_iter().rev().fold(res, |acc, a| Ty::arrow(a, acc))
    }

    pub fn is_static(&self) -> bool {
        self.stage == Stage::Sta
    }

    pub fn as_arrow(&self) -> Option<(&Ty, &Ty)> {
        match &self.kind {
            TyKind::Arrow(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_circ(&self) -> Option<(usize, usize)> {
        match self.kind {
            TyKind::Circ(i, o) => Some((i, o)),
            _ => None,
        }
    }

    /// Checks every node against the index constraints of its former.
    pub fn well_formed(&self) -> Result<(), TyFault> {
        if !self.stage.legal_in(self.phase) {
            return Err(TyFault::IllegalStage);
        }
        let src_sta = self.phase == Phase::Src && self.stage == Stage::Sta;
        match &self.kind {
            TyKind::Base | TyKind::Nat => Ok(()),
            TyKind::Bool if src_sta => Ok(()),
            TyKind::Bool => Err(TyFault::StaticOnly),
            TyKind::Arrow(a, b) => {
                for side in [a, b] {
                    if side.phase != self.phase || side.stage != self.stage {
                        return Err(TyFault::HeterogeneousArrow);
                    }
                    side.well_formed()?;
                }
                Ok(())
            }
            TyKind::Lift(inner) => {
                if !src_sta {
                    return Err(TyFault::StaticOnly);
                }
                if inner.phase != Phase::Src || inner.stage != Stage::Dyn {
                    return Err(TyFault::BadLiftPayload);
                }
                inner.well_formed()
            }
            TyKind::Prod(a, b) => {
                if !src_sta {
                    return Err(TyFault::StaticOnly);
                }
                for side in [a, b] {
                    if side.phase != Phase::Src || side.stage != Stage::Sta {
                        return Err(TyFault::StaticOnly);
                    }
                    side.well_formed()?;
                }
                Ok(())
            }
            TyKind::Circ(..) if self.stage == Stage::Dyn => Ok(()),
            TyKind::Circ(..) => Err(TyFault::DynamicOnly),
        }
    }

    /// Re-indexes a source dynamic type into the staged phase.
    ///
    /// Returns `None` when some node is not at `(Src, Dyn)`, which also rules
    /// out lifts, booleans, and products.
    pub fn as_staged(&self) -> Option<Ty> {
        if self.phase != Phase::Src || self.stage != Stage::Dyn {
            return None;
        }
        let kind = match &self.kind {
            TyKind::Base => TyKind::Base,
            TyKind::Nat => TyKind::Nat,
            TyKind::Arrow(a, b) => {
                TyKind::Arrow(Box::new(a.as_staged()?), Box::new(b.as_staged()?))
            }
            TyKind::Circ(i, o) => TyKind::Circ(*i, *o),
            TyKind::Bool | TyKind::Lift(_) | TyKind::Prod(..) => return None,
        };
        Some(Ty { phase: Phase::Stg, stage: Stage::Dyn, kind })
    }

    /// Number of type nodes.
    pub fn size(&self) -> usize {
        1 + match &self.kind {
            TyKind::Arrow(a, b) | TyKind::Prod(a, b) => a.size() + b.size(),
            TyKind::Lift(a) => a.size(),
            _ => 0,
        }
    }
}

/// A context: left-nested list of types, most local binding last.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Ctx(Vec<Ty>);

impl Ctx {
    pub fn empty() -> Ctx {
        Ctx(Vec::new())
    }

    pub fn snoc(&self, ty: Ty) -> Ctx {
        let mut v = self.0.clone();
        v.push(ty);
        Ctx(v)
    }

    pub fn push(&mut self, ty: Ty) {
        self.0.push(ty);
    }

    pub fn pop(&mut self) -> Option<Ty> {
        self.0.pop()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Type of the variable with de Bruijn index `var`.
    pub fn lookup(&self, var: Var) -> Option<&Ty> {
        self.0.len().checked_sub(var.0 + 1).map(|i| &self.0[i])
    }

    /// Entries from the outermost binding to the most local one.
    pub fn entries(&self) -> &[Ty] {
        &self.0
    }
}

impl FromIterator<Ty> for Ctx {
    fn from_iter<I: IntoIterator<Item = Ty>>(iter: I) -> Self {
        Ctx(iter.into_iter().collect())
    }
}

/// A de Bruijn index; `Var(0)` is the most recently bound variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub usize);

impl Var {
    pub const HERE: Var = Var(0);

    pub fn there(self) -> Var {
        Var(self.0 + 1)
    }

    pub fn index(self) -> usize {
        self.0
    }
}
