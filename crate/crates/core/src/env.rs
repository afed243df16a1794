use std::cell::RefCell;
use std::rc::Rc;

use crate::value::{Symbol, Value};

/// Whether reading a binding returns its cell verbatim or forces it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlotKind {
    Plain,
    /// Reading forces the cell when it holds a thunk.
    Lazy,
}

#[derive(Debug, Clone)]
pub struct Binding {
    pub kind: SlotKind,
    pub value: Value,
}

struct Frame {
    bindings: RefCell<Vec<(Symbol, Binding)>>,
    parent: Env,
}

/// A chain of lexical frames. The empty chain is the global environment,
/// whose variables live in the interpreter.
#[derive(Clone, Default)]
pub struct Env(Option<Rc<Frame>>);

impl Env {
    pub fn global() -> Env {
        Env(None)
    }

    pub fn is_global(&self) -> bool {
        self.0.is_none()
    }

    /// A new empty frame whose parent is `self`.
    pub fn extend(&self) -> Env {
        Env(Some(Rc::new(Frame {
            bindings: RefCell::new(Vec::new()),
            parent: self.clone(),
        })))
    }

    /// Adds a binding to the innermost frame, replacing any existing binding
    /// of the same name there.
    ///
    /// # Panics
    ///
    /// Panics when called on the global environment.
    pub fn define(&self, name: Symbol, kind: SlotKind, value: Value) {
        let frame = self.0.as_ref().expect("define on the global environment");
        let mut bindings = frame.bindings.borrow_mut();
        let binding = Binding { kind, value };
        match bindings.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = binding,
            None => bindings.push((name, binding)),
        }
    }

    /// Innermost binding of `name`, if any lexical frame has one.
    pub fn lookup(&self, name: &Symbol) -> Option<Binding> {
        let mut cur = self;
        while let Some(frame) = &cur.0 {
            if let Some((_, b)) = frame.bindings.borrow().iter().rev().find(|(n, _)| n == name) {
                return Some(b.clone());
            }
            cur = &frame.parent;
        }
        None
    }

    /// A copy of the innermost frame as it stands now. Later definitions in
    /// `self` are not visible through the snapshot.
    pub fn snapshot(&self) -> Env {
        match &self.0 {
            None => Env(None),
            Some(frame) => Env(Some(Rc::new(Frame {
                bindings: RefCell::new(frame.bindings.borrow().clone()),
                parent: frame.parent.clone(),
            }))),
        }
    }
}

impl std::fmt::Debug for Env {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut depth = 0;
        let mut cur = self;
        while let Some(frame) = &cur.0 {
            depth += 1;
            cur = &frame.parent;
        }
        write!(f, "Env(depth {depth})")
    }
}
