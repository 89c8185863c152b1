//! Parsers for the textual formats: terms, formulas, theories, proofs,
//! hypothesis lists and assignments.

use num_traits::{One, Zero};

use super::sexpr::{read_all, read_one, ParseError, Pos, Sexp};
use crate::calculus::{AxiomName, Binding, Justification, Proof, Step, StepId};
use crate::eval::Valuation;
use crate::syntax::rational::{is_unit, parse_rational};
use crate::syntax::{EpSeq, Equation, Formula, Rational, Term, Theory, RESERVED_VAR};

type Result<T> = std::result::Result<T, ParseError>;

fn err<T>(at: &Sexp, message: impl Into<String>) -> Result<T> {
    Err(ParseError::new(at.pos(), message))
}

fn is_var_name(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_lowercase())
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn arity(at: &Sexp, head: &str, args: &[Sexp], n: usize) -> Result<()> {
    if args.len() == n {
        Ok(())
    } else {
        err(at, format!("`{head}` takes {n} argument(s), got {}", args.len()))
    }
}

fn atom<'s>(s: &'s Sexp, what: &str) -> Result<&'s str> {
    s.as_atom().map_or_else(|| err(s, format!("expected {what}")), Ok)
}

fn integer(s: &Sexp) -> Result<u64> {
    atom(s, "an integer")?
        .parse()
        .map_or_else(|_| err(s, "expected a nonnegative integer"), Ok)
}

fn rational(s: &Sexp) -> Result<Rational> {
    parse_rational(atom(s, "a rational")?).map_or_else(|| err(s, "expected a rational p/q"), Ok)
}

fn unit_rational(s: &Sexp) -> Result<Rational> {
    let r = rational(s)?;
    if is_unit(&r) {
        Ok(r)
    } else {
        err(s, format!("{r} lies outside [0,1]"))
    }
}

/// Splits `(pre a…) (per b…)` into its two blocks; the period may not be
/// empty.
fn seq_blocks<'s>(at: &'s Sexp, args: &'s [Sexp]) -> Result<(&'s [Sexp], &'s [Sexp])> {
    let [pre, per] = args else {
        return err(at, "expected (pre …) (per …)");
    };
    let block = |s: &'s Sexp, name: &str| match s.as_form() {
        Some((h, items)) if h == name => Ok(items),
        _ => err(s, format!("expected ({name} …)")),
    };
    let (pre, per) = (block(pre, "pre")?, block(per, "per")?);
    if per.is_empty() {
        return err(at, "the period of a δ-sequence cannot be empty");
    }
    Ok((pre, per))
}

fn seq_of<T: Clone + PartialEq>(
    at: &Sexp,
    args: &[Sexp],
    mut item: impl FnMut(&Sexp) -> Result<T>,
) -> Result<EpSeq<T>> {
    let (pre, per) = seq_blocks(at, args)?;
    let pre = pre.iter().map(&mut item).collect::<Result<Vec<_>>>()?;
    let per = per.iter().map(&mut item).collect::<Result<Vec<_>>>()?;
    Ok(EpSeq::raw(pre, per).expect("period checked nonempty"))
}

pub fn term_from_sexp(s: &Sexp) -> Result<Term> {
    match s {
        Sexp::Atom(a, _) => match a.as_str() {
            "0" => Ok(Term::Zero),
            "1" => Ok(Term::One),
            _ if a.contains('/') => Ok(Term::scalar(unit_rational(s)?, Term::One)),
            _ if is_var_name(a) => {
                if a == RESERVED_VAR {
                    err(s, format!("`{RESERVED_VAR}` is reserved"))
                } else {
                    Ok(Term::var(a.as_str()))
                }
            }
            _ => err(s, format!("unexpected `{a}` in a term")),
        },
        Sexp::List(..) => {
            let Some((head, args)) = s.as_form() else {
                return err(s, "expected an operator");
            };
            let t = |i: usize| term_from_sexp(&args[i]);
            let binary = |f: fn(Term, Term) -> Term| -> Result<Term> {
                arity(s, head, args, 2)?;
                Ok(f(t(0)?, t(1)?))
            };
            match head {
                "neg" => {
                    arity(s, head, args, 1)?;
                    Ok(Term::neg(t(0)?))
                }
                "half" => {
                    arity(s, head, args, 1)?;
                    Ok(Term::half(t(0)?))
                }
                "oplus" => binary(Term::oplus),
                "odot" => binary(Term::odot),
                "ominus" => binary(Term::ominus),
                "to" => binary(Term::imp),
                "and" => binary(Term::meet),
                "or" => binary(Term::join),
                "dist" => binary(Term::dist),
                "pow" => {
                    arity(s, head, args, 2)?;
                    Ok(Term::power(t(0)?, integer(&args[1])?))
                }
                "mul" => {
                    arity(s, head, args, 2)?;
                    Ok(Term::multiple(integer(&args[0])?, t(1)?))
                }
                "scalar" => {
                    arity(s, head, args, 2)?;
                    Ok(Term::scalar(unit_rational(&args[0])?, t(1)?))
                }
                "delta" => Ok(Term::Delta(seq_of(s, args, term_from_sexp)?)),
                _ => err(s, format!("unknown term operator `{head}`")),
            }
        }
    }
}

pub fn formula_from_sexp(s: &Sexp) -> Result<Formula> {
    match s {
        Sexp::Atom(a, _) if is_var_name(a) => Ok(Formula::var(a.as_str())),
        Sexp::Atom(a, _) => err(s, format!("unexpected `{a}` in a formula")),
        Sexp::List(..) => {
            let Some((head, args)) = s.as_form() else {
                return err(s, "expected a connective");
            };
            let f = |i: usize| formula_from_sexp(&args[i]);
            match head {
                "neg" => {
                    arity(s, head, args, 1)?;
                    Ok(Formula::neg(f(0)?))
                }
                "hhat" => {
                    arity(s, head, args, 1)?;
                    Ok(Formula::hhat(f(0)?))
                }
                "to" => {
                    arity(s, head, args, 2)?;
                    Ok(Formula::imp(f(0)?, f(1)?))
                }
                "delta" => Ok(Formula::Delta(seq_of(s, args, formula_from_sexp)?)),
                _ => err(s, format!("unknown connective `{head}`")),
            }
        }
    }
}

pub fn equation_from_sexp(s: &Sexp) -> Result<Equation> {
    match s.as_form() {
        Some(("eq", args)) => {
            arity(s, "eq", args, 2)?;
            Ok(Equation::new(term_from_sexp(&args[0])?, term_from_sexp(&args[1])?))
        }
        _ => err(s, "expected (eq term term)"),
    }
}

fn justification_from_sexp(s: &Sexp) -> Result<Justification> {
    let Some((head, args)) = s.as_form() else {
        return err(s, "expected a justification");
    };
    match head {
        "hyp" => {
            arity(s, head, args, 0)?;
            Ok(Justification::Hypothesis)
        }
        "mp" => {
            arity(s, head, args, 2)?;
            Ok(Justification::ModusPonens { premise: integer(&args[0])?, implication: integer(&args[1])? })
        }
        "delta" => Ok(Justification::DeltaRule(seq_of(s, args, integer)?)),
        "axiom" => {
            let Some((name, binds)) = args.split_first() else {
                return err(s, "expected an axiom name");
            };
            let name: AxiomName = atom(name, "an axiom name")?
                .parse()
                .map_err(|e: crate::calculus::UnknownAxiom| ParseError::new(name.pos(), e.to_string()))?;
            let mut b = Binding::new();
            for bind in binds {
                match bind.as_form() {
                    Some(("bind", [mv, f])) => {
                        let mv = atom(mv, "a metavariable")?;
                        if b.scalars.contains_key(mv) {
                            return err(bind, format!("`{mv}` bound twice"));
                        }
                        b = b.bind(mv, formula_from_sexp(f)?);
                    }
                    Some(("bindseq", [mv, rest @ ..])) => {
                        let mv = atom(mv, "a metavariable")?;
                        if b.seqs.contains_key(mv) {
                            return err(bind, format!("`{mv}` bound twice"));
                        }
                        b = b.bind_seq(mv, seq_of(bind, rest, formula_from_sexp)?);
                    }
                    _ => return err(bind, "expected (bind MV formula) or (bindseq MV (pre …) (per …))"),
                }
            }
            Ok(Justification::Axiom(name, b))
        }
        _ => err(s, format!("unknown justification `{head}`")),
    }
}

fn step_from_sexp(s: &Sexp) -> Result<Step> {
    match s.as_form() {
        Some(("step", [id, f, j])) => Ok(Step::new(
            integer(id)? as StepId,
            formula_from_sexp(f)?,
            justification_from_sexp(j)?,
        )),
        _ => err(s, "expected (step ID formula justification)"),
    }
}

pub fn parse_term(text: &str) -> Result<Term> {
    term_from_sexp(&read_one(text)?)
}

pub fn parse_formula(text: &str) -> Result<Formula> {
    formula_from_sexp(&read_one(text)?)
}

pub fn parse_equation(text: &str) -> Result<Equation> {
    equation_from_sexp(&read_one(text)?)
}

pub fn parse_theory(text: &str) -> Result<Theory> {
    let eqs = read_all(text)?.iter().map(equation_from_sexp).collect::<Result<Vec<_>>>()?;
    Ok(Theory::new(eqs))
}

/// A whitespace-separated list of formulas.
pub fn parse_hypotheses(text: &str) -> Result<Vec<Formula>> {
    read_all(text)?.iter().map(formula_from_sexp).collect()
}

pub fn parse_proof(text: &str) -> Result<Proof> {
    let steps = read_all(text)?.iter().map(step_from_sexp).collect::<Result<Vec<_>>>()?;
    Proof::new(steps).map_err(|e| ParseError::new(Pos { line: 1, col: 1 }, e.to_string()))
}

/// `x=1/2,y=0` style assignments. Values must lie in `[0,1]`.
pub fn parse_assignment(text: &str) -> std::result::Result<Valuation, String> {
    let mut f = Valuation::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (var, value) = part
            .split_once('=')
            .ok_or_else(|| format!("expected VAR=VALUE, got `{part}`"))?;
        let var = var.trim();
        if !is_var_name(var) {
            return Err(format!("bad variable name `{var}`"));
        }
        let r = parse_rational(value.trim()).ok_or_else(|| format!("bad rational `{}`", value.trim()))?;
        f.set(var, r).map_err(|e| e.to_string())?;
    }
    Ok(f)
}

/// Zero and one print as the constants; everything else as `p/q`.
pub fn rational_atom(r: &Rational) -> String {
    if r.is_zero() {
        "0".into()
    } else if r.is_one() {
        "1".into()
    } else {
        r.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::rat;

    #[test]
    fn spec_examples() {
        let x = Term::var("x");
        assert_eq!(parse_term("(oplus x (neg x))").unwrap(), Term::oplus(x.clone(), Term::neg(x.clone())));
        let d = parse_term("(delta (pre x) (per 0))").unwrap();
        assert_eq!(d, Term::delta(vec![x.clone()], vec![Term::Zero]).unwrap());
        assert_eq!(d.expand(), Term::half(x).expand());
        assert_eq!(parse_term("1/3").unwrap(), Term::scalar(rat(1, 3), Term::One));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_term("(oplus x\n  (neg))").unwrap_err();
        assert_eq!((e.pos.line, e.pos.col), (2, 3));
        assert!(parse_term("p0").is_err());
        assert!(parse_term("3/2").is_err());
        assert!(parse_term("(delta (pre x) (per))").is_err());
        assert!(parse_term("X").is_err());
    }

    #[test]
    fn print_parse_round_trip() {
        for text in [
            "(oplus x (neg x))",
            "(delta (pre x 1/3) (per (pow y 3) (mul 2 z)))",
            "(scalar 1 x)",
            "(and (or x y) (dist x (half y)))",
        ] {
            let t = parse_term(text).unwrap();
            assert_eq!(parse_term(&t.to_string()).unwrap(), t);
        }
        let f = parse_formula("(to (hhat x) (delta (pre) (per (neg y) x)))").unwrap();
        assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn proof_round_trip() {
        let text = "(step 1 a (hyp))\n\
                    (step 2 (to a (to b a)) (axiom L1 (bind alpha a) (bind beta b)))\n\
                    (step 3 (to b a) (mp 1 2))\n\
                    (step 4 (delta (pre) (per (to b a))) (delta (pre) (per 3)))\n\
                    (step 5 (to (delta (pre) (per a)) a) (axiom D3a (bind alpha a)))\n\
                    (step 6 (to (delta (pre) (per a)) (delta (pre) (per a))) \
                       (axiom D7 (bindseq alphas (pre) (per a)) (bindseq betas (pre) (per a))))";
        let p = parse_proof(text).unwrap();
        assert_eq!(p.steps().len(), 6);
        assert_eq!(parse_proof(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn assignments() {
        let f = parse_assignment("x=1/2, y=0").unwrap();
        assert_eq!(f.get("x"), Some(&rat(1, 2)));
        assert!(parse_assignment("x=3/2").is_err());
        assert!(parse_assignment("x").is_err());
    }
}
