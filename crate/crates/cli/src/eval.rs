//! Evaluation of parsed expressions to canonical values.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use yangian_core::current::{CurrentAlgebra, CurrentElement, Cur};
use yangian_core::envelope::render::render_terms;
use yangian_core::envelope::{Monomial, Tensor};
use yangian_core::{Envelope, FmElement, FmTensor, FreeModel, HPoly, LieElement, Rational, TensorElement, UElement};

use crate::error::DslError;
use crate::lexer::Pos;
use crate::parser::{parse, Builtin, Expr, Generator, Node};

/// The value of an expression, in the smallest structure that holds it.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(HPoly),
    U(UElement),
    Fm(FmElement),
    UTensor(TensorElement),
    FmTensor(FmTensor),
    Current(CurrentElement),
    /// `u^n` on its own; it only becomes meaningful multiplied into `g`.
    LoopPower(u32),
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Kind {
    Scalar,
    U,
    Fm,
    UTensor,
    FmTensor,
    Current,
    LoopPower,
}

impl Value {
    fn kind(&self) -> Kind {
        match self {
            Value::Scalar(_) => Kind::Scalar,
            Value::U(_) => Kind::U,
            Value::Fm(_) => Kind::Fm,
            Value::UTensor(_) => Kind::UTensor,
            Value::FmTensor(_) => Kind::FmTensor,
            Value::Current(_) => Kind::Current,
            Value::LoopPower(_) => Kind::LoopPower,
        }
    }

    fn arity(&self) -> Option<usize> {
        match self {
            Value::UTensor(t) => Some(t.arity()),
            Value::FmTensor(t) => Some(t.arity()),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Value::Scalar(_) => "a scalar".into(),
            Value::U(_) => "an element of U(g)".into(),
            Value::Fm(_) => "a free-model element".into(),
            Value::UTensor(t) => format!("a tensor of arity {} over U(g)", t.arity()),
            Value::FmTensor(t) => format!("a free-model tensor of arity {}", t.arity()),
            Value::Current(_) => "an element of g[u]".into(),
            Value::LoopPower(_) => "a bare power of u".into(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Scalar(c) => c.is_zero(),
            Value::U(a) => a.is_zero(),
            Value::Fm(a) => a.is_zero(),
            Value::UTensor(t) => t.is_zero(),
            Value::FmTensor(t) => t.is_zero(),
            Value::Current(f) => f.is_zero(),
            Value::LoopPower(_) => false,
        }
    }
}

/// Everything an expression over `sl_n` can refer to.
pub struct Context {
    env: Arc<Envelope>,
    fm: FreeModel,
    cur: CurrentAlgebra,
}

type Out = Result<Value, DslError>;

fn scalar_int(n: i64) -> HPoly {
    HPoly::constant(Rational::from_integer(n.into()))
}

impl Context {
    pub fn new(env: Arc<Envelope>) -> yangian_core::Result<Self> {
        let fm = FreeModel::new(env.clone())?;
        let cur = CurrentAlgebra::new(env.g().clone());
        Ok(Self { env, fm, cur })
    }

    pub fn env(&self) -> &Arc<Envelope> {
        &self.env
    }

    pub fn free_model(&self) -> &FreeModel {
        &self.fm
    }

    pub fn current(&self) -> &CurrentAlgebra {
        &self.cur
    }

    /// Parses and evaluates `src`.
    pub fn evaluate(&self, src: &str) -> Out {
        self.eval(&parse(src)?)
    }

    /// The canonical rendering; it parses back to the same value.
    pub fn render(&self, v: &Value) -> String {
        match v {
            Value::Scalar(c) => render_terms([(String::new(), c.clone())]),
            Value::U(a) => self.env.render(a),
            Value::Fm(a) => self.fm.render(a),
            Value::UTensor(t) => self.env.render_tensor(t),
            Value::FmTensor(t) => self.fm.render_tensor(t),
            Value::Current(f) => self.cur.render(f),
            Value::LoopPower(1) => "u".into(),
            Value::LoopPower(n) => format!("u^{n}"),
        }
    }

    pub fn eval(&self, e: &Expr) -> Out {
        let pos = e.pos;
        match &e.node {
            Node::Int(n) => Ok(Value::Scalar(HPoly::constant(Rational::from_integer(BigInt::from(n.clone()))))),
            Node::Hbar => Ok(Value::Scalar(HPoly::hbar(1))),
            Node::U => Ok(Value::LoopPower(1)),
            Node::Omega => Ok(Value::UTensor(self.env.casimir_tensor())),
            Node::Name(name) => match self.env.g().lookup(name) {
                Some(b) => Ok(Value::U(self.env.letter(b))),
                None => Err(DslError::UnknownName { pos, name: name.clone() }),
            },
            Node::Gen(g, arg) => {
                let x = self.lie_arg(arg, &g.to_string())?;
                Ok(match g {
                    Generator::I => Value::Fm(self.fm.iota_lie(&x)),
                    Generator::J => Value::Fm(self.fm.j_lie(&x)),
                    Generator::G => Value::Current(self.cur.embed(&x, 1)),
                })
            }
            Node::Call(b, arg) => self.call(*b, arg, pos),
            Node::Neg(a) => self.scale(self.eval(a)?, &scalar_int(-1), pos),
            Node::Add(a, b) => self.add(self.eval(a)?, self.eval(b)?, pos),
            Node::Sub(a, b) => {
                let rhs = self.scale(self.eval(b)?, &scalar_int(-1), pos)?;
                self.add(self.eval(a)?, rhs, pos)
            }
            Node::Mul(a, b) => self.mul(self.eval(a)?, self.eval(b)?, pos),
            Node::Div(a, b) => {
                let d = self.eval(b)?;
                let r = match &d {
                    Value::Scalar(c) => c.as_constant().filter(|r| !r.is_zero()),
                    _ => None,
                };
                let r = r.ok_or_else(|| DslError::eval(b.pos, "can only divide by a nonzero rational number"))?;
                self.scale(self.eval(a)?, &HPoly::constant(r.recip()), pos)
            }
            Node::Pow(a, k) => self.pow(self.eval(a)?, *k, pos),
            Node::Bracket(a, b) => self.bracket(self.eval(a)?, self.eval(b)?, pos),
            Node::Tensor(a, b) => {
                let (x, y) = (self.as_tensor(self.eval(a)?, a.pos)?, self.as_tensor(self.eval(b)?, b.pos)?);
                Ok(match self.join(x, y, pos)? {
                    (Value::UTensor(x), Value::UTensor(y)) => Value::UTensor(x.outer(&y)),
                    (Value::FmTensor(x), Value::FmTensor(y)) => Value::FmTensor(x.outer(&y)),
                    _ => unreachable!("tensors join to tensors"),
                })
            }
        }
    }

    fn lie_arg(&self, arg: &Expr, what: &str) -> Result<LieElement, DslError> {
        let v = self.eval(arg)?;
        self.as_lie(&v)
            .ok_or_else(|| DslError::eval(arg.pos, format!("the argument of {what} must lie in g, got {}", v.describe())))
    }

    /// Reads a value as an element of `g`, if it is one.
    pub fn as_lie(&self, v: &Value) -> Option<LieElement> {
        let mut out = LieElement::zero();
        match v {
            Value::Scalar(c) if c.is_zero() => {}
            Value::U(a) => {
                for (m, c) in a {
                    let [b] = m.letters() else { return None };
                    out.add_term(*b, c.as_constant()?);
                }
            }
            Value::Fm(a) => {
                for (w, c) in a {
                    let ([], [b]) = (w.j.as_slice(), w.i.letters()) else { return None };
                    out.add_term(*b, c.as_constant()?);
                }
            }
            _ => return None,
        }
        Some(out)
    }

    fn mismatch(&self, op: &str, a: &Value, b: &Value, pos: Pos) -> DslError {
        let msg = if a.arity().is_some() || b.arity().is_some() {
            format!("mixing tensor arities: cannot {op} {} and {}", a.describe(), b.describe())
        } else {
            format!("cannot {op} {} and {}", a.describe(), b.describe())
        };
        DslError::eval(pos, msg)
    }

    /// Converts `v` to `target`, when that is an inclusion.
    fn lift(&self, v: Value, target: Kind, arity: usize, pos: Pos) -> Out {
        if v.kind() == target {
            return Ok(v);
        }
        Ok(match (v, target) {
            (Value::Scalar(c), Kind::U) => Value::U(self.env.scalar(c)),
            (Value::Scalar(c), Kind::Fm) => Value::Fm(self.fm.scalar(c)),
            (Value::U(a), Kind::Fm) => Value::Fm(self.fm.from_u(&a)),
            (Value::UTensor(t), Kind::FmTensor) => Value::FmTensor(self.fm.from_u_tensor(&t)),
            (Value::Scalar(c), Kind::UTensor) if c.is_zero() => Value::UTensor(Tensor::zero(arity)),
            (Value::Scalar(c), Kind::FmTensor) if c.is_zero() => Value::FmTensor(Tensor::zero(arity)),
            (Value::Scalar(c), Kind::Current) if c.is_zero() => Value::Current(CurrentElement::zero()),
            (v @ Value::U(_), Kind::Current) => match self.as_lie(&v) {
                Some(x) => Value::Current(self.cur.embed(&x, 0)),
                None => return Err(DslError::eval(pos, "only elements of g embed into g[u]")),
            },
            (v, _) => return Err(DslError::eval(pos, format!("cannot use {} here", v.describe()))),
        })
    }

    /// Brings two values into a common structure.
    fn join(&self, a: Value, b: Value, pos: Pos) -> Result<(Value, Value), DslError> {
        use Kind::*;
        let (ka, kb) = (a.kind(), b.kind());
        let target = match (ka.min(kb), ka.max(kb)) {
            (x, y) if x == y => x,
            (Scalar | U, Fm) | (Scalar, U) => ka.max(kb),
            (UTensor, FmTensor) => FmTensor,
            (Scalar, UTensor | FmTensor | Current) | (U, Current) => ka.max(kb),
            _ => return Err(self.mismatch("combine", &a, &b, pos)),
        };
        if let (Some(x), Some(y)) = (a.arity(), b.arity()) {
            if x != y {
                return Err(self.mismatch("combine", &a, &b, pos));
            }
        }
        let arity = a.arity().or(b.arity()).unwrap_or(0);
        let err = |e: DslError| match e {
            DslError::Eval { .. } => self.mismatch("combine", &a, &b, pos),
            other => other,
        };
        let x = self.lift(a.clone(), target, arity, pos).map_err(err)?;
        let y = self.lift(b.clone(), target, arity, pos).map_err(err)?;
        Ok((x, y))
    }

    fn add(&self, a: Value, b: Value, pos: Pos) -> Out {
        Ok(match self.join(a, b, pos)? {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x + &y),
            (Value::U(x), Value::U(y)) => Value::U(&x + &y),
            (Value::Fm(x), Value::Fm(y)) => Value::Fm(&x + &y),
            (Value::UTensor(x), Value::UTensor(y)) => Value::UTensor(x.add(&y).map_err(|e| DslError::eval(pos, e))?),
            (Value::FmTensor(x), Value::FmTensor(y)) => {
                Value::FmTensor(x.add(&y).map_err(|e| DslError::eval(pos, e))?)
            }
            (Value::Current(x), Value::Current(y)) => Value::Current(&x + &y),
            (x, y) => return Err(self.mismatch("add", &x, &y, pos)),
        })
    }

    fn scale(&self, v: Value, c: &HPoly, pos: Pos) -> Out {
        Ok(match v {
            Value::Scalar(x) => Value::Scalar(&x * c),
            Value::U(a) => Value::U(a.scale(c)),
            Value::Fm(a) => Value::Fm(a.scale(c)),
            Value::UTensor(t) => Value::UTensor(t.scale(c)),
            Value::FmTensor(t) => Value::FmTensor(t.scale(c)),
            Value::Current(f) => match c.as_constant() {
                Some(r) => Value::Current(f.scale_rational(&r)),
                None => return Err(DslError::eval(pos, "g[u] is defined over the rationals; hbar cannot act on it")),
            },
            Value::LoopPower(_) => return Err(DslError::eval(pos, "a power of u must multiply an element of g")),
        })
    }

    fn shift(&self, f: &CurrentElement, n: u32) -> CurrentElement {
        f.iter().map(|(k, c)| (Cur(k.0, k.1 + n), c.clone())).collect()
    }

    fn mul(&self, a: Value, b: Value, pos: Pos) -> Out {
        match (a, b) {
            (Value::Scalar(c), v) | (v, Value::Scalar(c)) if v.kind() != Kind::LoopPower => self.scale(v, &c, pos),
            (Value::LoopPower(n), Value::LoopPower(m)) => Ok(Value::LoopPower(n + m)),
            (Value::LoopPower(n), v) | (v, Value::LoopPower(n)) => match v {
                Value::Current(f) => Ok(Value::Current(self.shift(&f, n))),
                v => match self.as_lie(&v) {
                    Some(x) if !matches!(v, Value::Fm(_)) => Ok(Value::Current(self.cur.embed(&x, n))),
                    _ => Err(DslError::eval(pos, format!("u^{n} must multiply an element of g, got {}", v.describe()))),
                },
            },
            (a, b) => Ok(match self.join(a, b, pos)? {
                (Value::U(x), Value::U(y)) => Value::U(self.env.mul(&x, &y)),
                (Value::Fm(x), Value::Fm(y)) => Value::Fm(self.fm.mul(&x, &y)),
                (Value::UTensor(x), Value::UTensor(y)) => {
                    Value::UTensor(self.env.t_mul(&x, &y).map_err(|e| DslError::eval(pos, e))?)
                }
                (Value::FmTensor(x), Value::FmTensor(y)) => {
                    Value::FmTensor(self.fm.t_mul(&x, &y).map_err(|e| DslError::eval(pos, e))?)
                }
                (Value::Current(_), Value::Current(_)) => {
                    return Err(DslError::eval(pos, "g[u] is a Lie algebra; use [a, b] instead of a product"))
                }
                (x, y) => return Err(self.mismatch("multiply", &x, &y, pos)),
            }),
        }
    }

    fn pow(&self, v: Value, k: u32, pos: Pos) -> Out {
        match v {
            Value::LoopPower(n) => Ok(Value::LoopPower(n * k)),
            Value::Current(_) => Err(DslError::eval(pos, "g[u] has no powers")),
            v if k == 0 => match v.arity() {
                None => Ok(Value::Scalar(HPoly::one())),
                Some(n) => Ok(Value::UTensor(self.env.tensor_one(n))),
            },
            v => {
                let mut acc = v.clone();
                for _ in 1..k {
                    acc = self.mul(acc, v.clone(), pos)?;
                }
                Ok(acc)
            }
        }
    }

    fn bracket(&self, a: Value, b: Value, pos: Pos) -> Out {
        Ok(match self.join(a, b, pos)? {
            (Value::Scalar(_), Value::Scalar(_)) => Value::Scalar(HPoly::zero()),
            (Value::U(x), Value::U(y)) => Value::U(self.env.bracket(&x, &y)),
            (Value::Fm(x), Value::Fm(y)) => Value::Fm(self.fm.bracket(&x, &y)),
            (Value::UTensor(x), Value::UTensor(y)) => {
                Value::UTensor(self.env.t_bracket(&x, &y).map_err(|e| DslError::eval(pos, e))?)
            }
            (Value::FmTensor(x), Value::FmTensor(y)) => {
                Value::FmTensor(self.fm.t_bracket(&x, &y).map_err(|e| DslError::eval(pos, e))?)
            }
            (Value::Current(x), Value::Current(y)) => Value::Current(self.cur.bracket(&x, &y)),
            (x, y) => return Err(self.mismatch("bracket", &x, &y, pos)),
        })
    }

    fn as_tensor(&self, v: Value, pos: Pos) -> Out {
        let one_slot = |a: &UElement| {
            Tensor::from_terms(1, a.iter().map(|(m, c)| (vec![m.clone()], c.clone())).collect())
        };
        Ok(match v {
            Value::Scalar(c) => Value::UTensor(Tensor::pure(vec![Monomial::unit()], c)),
            Value::U(a) => Value::UTensor(one_slot(&a)),
            Value::Fm(a) => Value::FmTensor(Tensor::from_terms(1, a.iter().map(|(w, c)| (vec![w.clone()], c.clone())).collect())),
            t @ (Value::UTensor(_) | Value::FmTensor(_)) => t,
            v => return Err(DslError::eval(pos, format!("cannot form a tensor with {}", v.describe()))),
        })
    }

    fn call(&self, b: Builtin, arg: &Expr, pos: Pos) -> Out {
        if b == Builtin::Nu {
            let h = self.lie_arg(arg, "nu")?;
            return self.env.nu(&h).map(Value::U).map_err(|e| DslError::eval(arg.pos, e));
        }
        let v = match self.eval(arg)? {
            Value::Scalar(c) => Value::U(self.env.scalar(c)),
            v => v,
        };
        let unsupported = |v: &Value| DslError::eval(pos, format!("{} is not defined on {}", b.name(), v.describe()));
        Ok(match (b, &v) {
            (Builtin::Delta, Value::U(a)) => Value::UTensor(self.env.coproduct(a)),
            (Builtin::Delta, Value::Fm(a)) => Value::FmTensor(self.fm.coproduct(a)),
            (Builtin::Box, Value::U(a)) => Value::UTensor(self.env.box_n(a, 2)),
            (Builtin::Box, Value::Fm(a)) => Value::FmTensor(self.fm.box_n(a, 2)),
            (Builtin::S, Value::U(a)) => Value::U(self.env.antipode(a)),
            (Builtin::S, Value::Fm(a)) => Value::Fm(self.fm.antipode(a)),
            (Builtin::Eps, Value::U(a)) => Value::Scalar(self.env.counit(a)),
            (Builtin::Eps, Value::Fm(a)) => Value::Scalar(self.fm.counit(a)),
            (Builtin::T, Value::U(_) | Value::Fm(_)) => {
                // ad(f) ad(e) for the first simple root
                let (e, f) = self.env.g().simple_root_vectors(0);
                let ad = |x, v: Value| self.bracket(self.lift(Value::U(self.env.letter(x)), v.kind(), 0, pos)?, v, pos);
                ad(f, ad(e, v.clone())?)?
            }
            _ => return Err(unsupported(&v)),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use yangian_core::freequant::relation_defect_sl2;

    fn sl2() -> Context {
        Context::new(Envelope::sl(2).unwrap()).unwrap()
    }

    fn show(cx: &Context, src: &str) -> String {
        cx.render(&cx.evaluate(src).unwrap())
    }

    #[test]
    fn casimir_literal_matches_builtin() {
        let cx = sl2();
        assert_eq!(cx.evaluate("(1/2)*h (x) h + e (x) f + f (x) e").unwrap(), cx.evaluate("Omega").unwrap());
    }

    #[test]
    fn defect_expression_matches_model() {
        let cx = sl2();
        let v = cx.evaluate("[[J(e),J(f)],J(h)] - hbar^2*(I(f)*J(e)-J(f)*I(e))*I(h)").unwrap();
        assert_eq!(v, Value::Fm(relation_defect_sl2(cx.free_model()).unwrap()));
    }

    #[test]
    fn coproduct_defect_of_jh() {
        let cx = sl2();
        let lhs = cx.evaluate("Delta(J(h)) - box(J(h))").unwrap();
        assert_eq!(lhs, cx.evaluate("hbar*(I(e) (x) I(f) - I(f) (x) I(e))").unwrap());
    }

    #[test]
    fn counit_and_antipode() {
        let cx = sl2();
        assert_eq!(show(&cx, "eps(J(e))"), "0");
        assert_eq!(show(&cx, "eps(2 + hbar)"), "2 + hbar");
        assert_eq!(show(&cx, "S(e*f)"), show(&cx, "f*e"));
    }

    #[test]
    fn t_operator_on_cartan() {
        let cx = sl2();
        assert_eq!(cx.evaluate("T(I(h))").unwrap(), cx.evaluate("2*I(h)").unwrap());
        assert_eq!(cx.evaluate("T(h)").unwrap(), cx.evaluate("2*h").unwrap());
    }

    #[test]
    fn currents() {
        let cx = sl2();
        assert_eq!(show(&cx, "[G(e), G(f)]"), "h*u^2");
        assert_eq!(cx.evaluate("[[G(e), G(f)], G(h)]").unwrap(), Value::Current(CurrentElement::zero()));
        assert_eq!(cx.evaluate("[h, e*u]").unwrap(), cx.evaluate("2*e*u").unwrap());
    }

    #[test]
    fn nu_of_cartan() {
        let cx = sl2();
        let nu = cx.evaluate("nu(h)").unwrap();
        assert_eq!(nu, Value::U(cx.env().nu(&cx.as_lie(&cx.evaluate("h").unwrap()).unwrap()).unwrap()));
        assert!(cx.evaluate("[h, nu(h)]").unwrap().is_zero());
        assert!(matches!(cx.evaluate("nu(e)"), Err(DslError::Eval { .. })));
    }

    #[test]
    fn errors() {
        let cx = sl2();
        assert_eq!(
            cx.evaluate("e + q").unwrap_err(),
            DslError::UnknownName { pos: Pos { line: 1, col: 5 }, name: "q".into() }
        );
        let err = cx.evaluate("e (x) f + h").unwrap_err();
        assert!(err.to_string().contains("mixing tensor arities"), "{err}");
        assert!(cx.evaluate("Omega + e (x) f (x) h").is_err());
        assert!(cx.evaluate("e / hbar").is_err());
        assert!(cx.evaluate("J(e*f)").is_err());
    }

    #[test]
    fn renderings_parse_back() {
        let cx = sl2();
        for src in [
            "Delta(J(e)*J(f))",
            "S(J(h))*I(e) - (3/4)*hbar^2",
            "Delta(nu(h))",
            "[J(e), J(f)]*J(h)",
            "Omega*box(h) - 1 (x) e",
            "[G(e), G(f)] + 2*h*u^2 - (1/3)*f",
        ] {
            let Ok(v) = cx.evaluate(src) else { continue };
            assert_eq!(cx.evaluate(&cx.render(&v)).unwrap(), v, "{src} -> {}", cx.render(&v));
        }
    }
}
