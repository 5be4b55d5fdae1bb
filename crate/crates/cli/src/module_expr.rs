//! Constructor expressions for `g`-modules, as taken by `cohomology`.
//!
//! ```text
//! module := factor ('(x)' factor)*
//! factor := 'trivial' | 'adjoint' | 'dual' '(' module ')' | 'pbw' '(' INT ')' | '(' module ')'
//! ```

use num_traits::ToPrimitive;
use yangian_core::cohom::GModule;
use yangian_core::Envelope;

use crate::error::DslError;
use crate::lexer::{tokenize, Pos, Tok};

pub fn parse_module(src: &str, env: &Envelope) -> Result<GModule, DslError> {
    let mut p = ModuleParser { toks: tokenize(src)?, at: 0, env };
    let m = p.module()?;
    match &p.toks[p.at] {
        (Tok::Eof, _) => Ok(m),
        (t, pos) => Err(DslError::syntax(*pos, format!("unexpected {} after module", t.describe()))),
    }
}

struct ModuleParser<'a> {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    env: &'a Envelope,
}

impl ModuleParser<'_> {
    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if t.0 != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), DslError> {
        let (t, pos) = self.next();
        if t == want {
            Ok(())
        } else {
            Err(DslError::syntax(pos, format!("expected {}, found {}", want.describe(), t.describe())))
        }
    }

    fn module(&mut self) -> Result<GModule, DslError> {
        let mut m = self.factor()?;
        while self.toks[self.at].0 == Tok::Tensor {
            self.next();
            m = GModule::tensor(&m, &self.factor()?);
        }
        Ok(m)
    }

    fn factor(&mut self) -> Result<GModule, DslError> {
        let g = self.env.g().clone();
        let (tok, pos) = self.next();
        match tok {
            Tok::LParen => {
                let m = self.module()?;
                self.expect(Tok::RParen)?;
                Ok(m)
            }
            Tok::Ident(name) => match name.as_str() {
                "trivial" => Ok(GModule::trivial(g)),
                "adjoint" => Ok(GModule::adjoint(g)),
                "dual" => {
                    self.expect(Tok::LParen)?;
                    let m = self.module()?;
                    self.expect(Tok::RParen)?;
                    Ok(GModule::dual(&m))
                }
                "pbw" => {
                    self.expect(Tok::LParen)?;
                    let (t, p) = self.next();
                    let Tok::Int(d) = t else {
                        return Err(DslError::syntax(p, format!("expected a degree, found {}", t.describe())));
                    };
                    self.expect(Tok::RParen)?;
                    let d = d.to_usize().ok_or_else(|| DslError::syntax(p, "degree too large"))?;
                    Ok(GModule::pbw_slice(self.env, d))
                }
                _ => Err(DslError::syntax(pos, format!("unknown module `{name}` (use trivial, adjoint, dual(M), pbw(d), M (x) N)"))),
            },
            t => Err(DslError::syntax(pos, format!("expected a module, found {}", t.describe()))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors() {
        let env = Envelope::sl(2).unwrap();
        assert_eq!(parse_module("adjoint", &env).unwrap().dim(), 3);
        assert_eq!(parse_module("dual(adjoint) (x) pbw(1)", &env).unwrap().dim(), 12);
        assert_eq!(parse_module("(trivial (x) adjoint) (x) adjoint", &env).unwrap().dim(), 9);
        assert!(parse_module("adjunct", &env).is_err());
        assert!(parse_module("pbw(x)", &env).is_err());
    }
}
