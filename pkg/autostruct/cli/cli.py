import json
import logging
import sys
import typing

import click
import sympy

from autostruct.automata import Automaton, count_words, count_words_upto
from autostruct.cells import SCell, cell_param, fiber_data, qe, qf_to_cells
from autostruct.cells.qe import quantifier_depth
from autostruct.common.constants import (EXIT_OK, EXIT_USAGE_ERROR, OMEGA, PATTERNS, Builder, count_to_json)
from autostruct.common.exceptions import AutostructException, SerializationError, exit_code_for
from autostruct.common.log import enable_logging, log
from autostruct.common.settings import settings
from autostruct.eqstruct import (EqDescriptor, FiberSpec, Polynomial, build_Ep, build_Eg_presburger, check,
                                 class_count, classify, empirical_multiset, ep_interpretation, gvpf_to_descriptor)
from autostruct.growth import BoundedPattern, bounded_decomposition, classify_growth, normalize_letters, \
    pattern_exponents
from autostruct.presentation import (Formula, Interpretation, Presentation, apply_interpretation, decide, grid_example,
                                     is_poly_growth, omega_infinite_classes, omega_le, one_infinite_class, parse,
                                     pary_tree, presburger, presburger_div, reach, triangular_example)
from autostruct.presentation import eval as define
from autostruct.semilinear import (GeneralizedVpf, SemilinearSet, default_symbols, member, outdegree_gvpf,
                                   series_coeffs, to_formula)

LOGGER_NAME = "autostruct"

BUILDERS = {
    Builder.Omega: omega_le,
    Builder.Presburger: presburger,
    Builder.PresburgerDiv: presburger_div,
    Builder.Tree: pary_tree,
    Builder.Grid: grid_example,
    Builder.Triangular: triangular_example,
    Builder.OneInfinite: one_infinite_class,
    Builder.OmegaInfinite: omega_infinite_classes,
}

# Chamber file keys
CHAMBER_SET = "set"
CHAMBER_POLYNOMIAL = "polynomial"


def _load(stream) -> typing.Any:
    try:
        return json.load(stream)
    except json.JSONDecodeError as e:
        raise SerializationError(f"{stream.name} is not valid JSON: {e}")


def _loader(parse_json: typing.Callable[[typing.Any], typing.Any]):
    """click callback turning an opened JSON file into a value object."""

    def callback(ctx, param, stream):
        return None if stream is None else parse_json(_load(stream))

    return callback


def _dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def _emit(payload, out):
    click.echo(_dumps(payload), file=out)


def _vector(text: str) -> typing.List[int]:
    try:
        return [int(v) for v in text.split(",")] if text.strip() else []
    except ValueError:
        raise click.BadParameter(f"{text!r} is not a comma-separated list of integers")


def _names(text: typing.Optional[str]) -> typing.Optional[typing.List[str]]:
    return None if text is None else [v.strip() for v in text.split(",") if v.strip()]


def _formula(text: typing.Optional[str], stream) -> Formula:
    if (text is None) == (stream is None):
        raise click.UsageError("give exactly one of --formula and --formula-file")
    return parse(text if stream is None else stream.read())


def out_option(f):
    return click.option("--out", type=click.File("w", encoding="utf-8"), default="-",
                        help="Result file, stdout by default")(f)


def formula_options(f):
    f = click.option("--formula-file", type=click.File("r", encoding="utf-8"), help="File holding the formula")(f)
    return click.option("--formula", "formula_text", help="Formula text")(f)


def automaton_option(f):
    return click.option("--automaton", "a", type=click.File("r", encoding="utf-8"), required=True,
                        callback=_loader(Automaton.from_json), help="Automaton JSON file")(f)


def presentation_option(f):
    return click.option("--presentation", "p", type=click.File("r", encoding="utf-8"), required=True,
                        callback=_loader(Presentation.from_json), help="Presentation JSON file")(f)


def set_option(f):
    return click.option("--set", "s", type=click.File("r", encoding="utf-8"), required=True,
                        callback=_loader(SemilinearSet.from_json), help="Semilinear set JSON file")(f)


def descriptor_option(f):
    return click.option("--descriptor", "d", type=click.File("r", encoding="utf-8"), required=True,
                        callback=_loader(EqDescriptor.from_json), help="Descriptor JSON file")(f)


def _attach_stderr():
    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(logging.DEBUG)
    if not any(getattr(h, "autostruct", False) for h in logger.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.autostruct = True
        handler.setFormatter(logging.Formatter("%(levelname)s %(message)s"))
        logger.addHandler(handler)


@click.group()
@click.option("--verbose", is_flag=True, help="Trace the computation on stderr")
@click.option("--budget", type=click.IntRange(min=100), default=20000, show_default=True,
              help="State budget of the exact modulo-counting construction")
@click.option("--strict", is_flag=True, help="Fail on infinite sections under modulo quantifiers")
def cli(verbose: bool, budget: int, strict: bool):
    """Automatic structures of polynomial growth."""
    enable_logging(verbose)
    if verbose:
        _attach_stderr()
    settings.counting_state_budget = budget
    settings.strict_counting = strict


@cli.command()
@click.option("--automaton", "a", type=click.File("r", encoding="utf-8"), callback=_loader(Automaton.from_json),
              help="Classify a regular language")
@click.option("--presentation", "p", type=click.File("r", encoding="utf-8"),
              callback=_loader(Presentation.from_json), help="Classify the domain of a presentation")
@out_option
def growth(a: Automaton, p: Presentation, out):
    """Polynomial growth test with degree and bounded patterns."""
    if (a is None) == (p is None):
        raise click.UsageError("give exactly one of --automaton and --presentation")
    report = classify_growth(a) if p is None else is_poly_growth(p)
    _emit(report.to_json(), out)


@cli.command()
@automaton_option
@click.option("--upto", type=click.IntRange(min=0), required=True, help="Largest word length")
@out_option
def count(a: Automaton, upto: int, out):
    """Number of accepted words of length at most n, for every n up to --upto."""
    total = count_words(a)
    _emit({"counts": list(count_words_upto(a, upto).values), "total": count_to_json(OMEGA if total is None else total)},
          out)


@cli.command()
@automaton_option
@out_option
def decompose(a: Automaton, out):
    """Bounded patterns covering a language of polynomial growth."""
    _emit({PATTERNS: [pattern.to_json() for pattern in bounded_decomposition(a)]}, out)


@cli.command()
@automaton_option
@out_option
def normalize(a: Automaton, out):
    """Patterns over pairwise distinct letters and the recoding relation onto them."""
    patterns, recode = normalize_letters(bounded_decomposition(a), a.alphabet)
    _emit({PATTERNS: [pattern.to_json() for pattern in patterns], "recode": recode.relation.to_json()}, out)


@cli.command()
@automaton_option
@click.option("--pattern", type=click.File("r", encoding="utf-8"), required=True,
              callback=_loader(BoundedPattern.from_json), help="Bounded pattern JSON file")
@out_option
def exponents(a: Automaton, pattern: BoundedPattern, out):
    """Loop exponents of the words of the pattern that the automaton accepts."""
    _emit(pattern_exponents(a, pattern).to_json(), out)


@cli.command("eval")
@presentation_option
@formula_options
@click.option("--variables", help="Comma-separated track order, free variables by default")
@out_option
def eval_command(p: Presentation, formula_text, formula_file, variables, out):
    """Relation defined by a formula in a presentation."""
    formula = _formula(formula_text, formula_file)
    tracks = _names(variables)
    value = define(p, formula, tracks)
    if isinstance(value, bool):
        _emit(value, out)
        return
    tracks = tracks if tracks is not None else formula.free_variables()
    _emit({"variables": list(tracks), "relation": value.to_json()}, out)


@cli.command("decide")
@presentation_option
@formula_options
@out_option
def decide_command(p: Presentation, formula_text, formula_file, out):
    """Truth of a sentence."""
    _emit(decide(p, _formula(formula_text, formula_file)), out)


@cli.group()
def interp():
    """Interpretations between presentations."""


@interp.command()
@presentation_option
@click.option("--interpretation", "interpretation", type=click.File("r", encoding="utf-8"), required=True,
              callback=_loader(Interpretation.from_json), help="Interpretation JSON file")
@out_option
def apply(p: Presentation, interpretation: Interpretation, out):
    """Presentation of the structure an interpretation defines."""
    _emit(apply_interpretation(p, interpretation).to_json(), out)


@cli.group()
def build():
    """Presentations of the standard structures."""


def _builder_command(builder: Builder, factory) -> click.Command:

    def command(out, base: int = 2):
        presentation = factory(base) if builder.parametrized else factory()
        _emit(presentation.to_json(), out)

    command = out_option(command)
    if builder.parametrized:
        command = click.option("--base", type=int, default=2, show_default=True, help="Digit base")(command)
    return click.command(builder.value, help=(factory.__doc__ or builder.value).strip().splitlines()[0])(command)


for _builder, _factory in BUILDERS.items():
    build.add_command(_builder_command(_builder, _factory))


def _polynomial_option(f):
    return click.option("--polynomial", type=click.File("r", encoding="utf-8"), required=True,
                        callback=_loader(Polynomial.from_json), help="Polynomial JSON file")(f)


def _gvpf_option(f):
    return click.option("--gvpf", "g", type=click.File("r", encoding="utf-8"), required=True,
                        callback=_loader(GeneralizedVpf.from_json),
                        help="Generalized vector partition function JSON file")(f)


@build.command("ep")
@_polynomial_option
@click.option("--denominator", type=click.IntRange(min=1), default=1, show_default=True)
@out_option
def build_ep(polynomial: Polynomial, denominator: int, out):
    """E(p): one class of size p(x) for every argument x."""
    _emit(build_Ep(polynomial, denominator).to_json(), out)


@build.command("eg")
@_gvpf_option
@click.option("--base", type=int, default=2, show_default=True, help="Digit base of the host structure")
@out_option
def build_eg(g: GeneralizedVpf, base: int, out):
    """E(g) interpreted in the natural numbers with addition."""
    _emit(apply_interpretation(presburger(base), build_Eg_presburger(g, base)).to_json(), out)


@cli.group()
def cells():
    """Cells of the natural order with successor."""


@cells.command("decompose")
@formula_options
@click.option("--n", "n", type=click.IntRange(min=0), required=True, help="Arity")
@click.option("--variables", help="Comma-separated variable order, x0..x{n-1} by default")
@out_option
def cells_decompose(formula_text, formula_file, n: int, variables, out):
    """Cells whose union is the set a formula defines; quantifiers are eliminated first."""
    formula = _formula(formula_text, formula_file)
    if quantifier_depth(formula):
        formula = qe(formula)
    _emit(qf_to_cells(formula, n, _names(variables)).to_json(), out)


@cells.command("fiber")
@click.option("--cell", "c", type=click.File("r", encoding="utf-8"), required=True,
              callback=_loader(SCell.from_json), help="Cell JSON file")
@click.option("--m", "m", type=click.IntRange(min=0), required=True, help="Number of fiber coordinates")
@out_option
def cells_fiber(c: SCell, m: int, out):
    """Guarded fiber polynomial of a cell."""
    _emit(fiber_data(c, m).to_json(), out)


@cells.command("param")
@click.option("--cell", "c", type=click.File("r", encoding="utf-8"), required=True,
              callback=_loader(SCell.from_json), help="Cell JSON file")
@out_option
def cells_param(c: SCell, out):
    """Bijective affine parametrization of a cell."""
    _emit(cell_param(c).to_json(), out)


@cli.group()
def semilinear():
    """Semilinear sets and vector partition functions."""


@semilinear.command("member")
@set_option
@click.option("--point", required=True, help="Comma-separated coordinates")
@out_option
def semilinear_member(s: SemilinearSet, point: str, out):
    _emit(member(s, _vector(point)), out)


@semilinear.command("series")
@set_option
@click.option("--bound", type=click.IntRange(min=0), required=True, help="Coordinate bound of the box")
@out_option
def semilinear_series(s: SemilinearSet, bound: int, out):
    """Generating series coefficients on the box [0..bound]^n."""
    coeffs = series_coeffs(s, bound)
    _emit({"coeffs": [{"point": list(x), "coeff": coeffs[x]} for x in sorted(coeffs)]}, out)


@semilinear.command("outdegree")
@set_option
@click.option("--k", "k", type=click.IntRange(min=0), required=True, help="Number of input coordinates")
@out_option
def semilinear_outdegree(s: SemilinearSet, k: int, out):
    """Out-degree function of a disjoint simple relation as a generalized vector partition function."""
    _emit(outdegree_gvpf(s, k).to_json(), out)


@semilinear.command("toformula")
@set_option
@click.option("--variables", help="Comma-separated variable names")
@out_option
def semilinear_toformula(s: SemilinearSet, variables, out):
    """Presburger formula defining the set."""
    _emit({"formula": str(to_formula(s, _names(variables)))}, out)


@cli.group()
def eq():
    """Equivalence structures of polynomial growth."""


def _chambers(data) -> typing.List[typing.Tuple[SemilinearSet, sympy.Expr]]:
    if type(data) is not list:
        raise SerializationError("chambers must be a JSON array")
    chambers = []
    for entry in data:
        try:
            s = SemilinearSet.from_json(entry[CHAMBER_SET])
            expr = sympy.sympify(entry[CHAMBER_POLYNOMIAL], locals={str(x): x for x in default_symbols(s.dimension)})
        except (KeyError, TypeError, sympy.SympifyError) as e:
            raise SerializationError(f"malformed chamber: {e}")
        chambers.append((s, expr))
    return chambers


@eq.command("classify")
@click.option("--fiber", "spec", type=click.File("r", encoding="utf-8"), callback=_loader(FiberSpec.from_json),
              help="Graph of a partial function, classified by its kernel")
@click.option("--gvpf", "g", type=click.File("r", encoding="utf-8"), callback=_loader(GeneralizedVpf.from_json),
              help="Generalized vector partition function, with --chambers")
@click.option("--chambers", type=click.File("r", encoding="utf-8"), callback=_loader(_chambers),
              help="Chambers with the polynomial the function agrees with there")
@out_option
def eq_classify(spec: FiberSpec, g: GeneralizedVpf, chambers, out):
    """Polynomial descriptor of a kernel structure or of E(g)."""
    if spec is not None and g is None and chambers is None:
        d = classify(spec)
    elif spec is None and g is not None and chambers is not None:
        d = gvpf_to_descriptor(g, chambers)
    else:
        raise click.UsageError("give either --fiber, or --gvpf together with --chambers")
    _emit(d.to_json(), out)


@eq.command("build")
@click.option("--polynomial", type=click.File("r", encoding="utf-8"), callback=_loader(Polynomial.from_json),
              help="Interpretation of E(p) in the natural order")
@click.option("--gvpf", "g", type=click.File("r", encoding="utf-8"), callback=_loader(GeneralizedVpf.from_json),
              help="Interpretation of E(g) in the natural numbers with addition")
@click.option("--base", type=int, default=2, show_default=True, help="Digit base of the host structure for --gvpf")
@out_option
def eq_build(polynomial: Polynomial, g: GeneralizedVpf, base: int, out):
    """Interpretation realizing E(p) or E(g); `build ep` and `build eg` apply it."""
    if (polynomial is None) == (g is None):
        raise click.UsageError("give exactly one of --polynomial and --gvpf")
    interpretation = ep_interpretation(polynomial) if g is None else build_Eg_presburger(g, base)
    _emit(interpretation.to_json(), out)


@eq.command("check")
@presentation_option
@descriptor_option
@click.option("--bound", type=click.IntRange(min=0), required=True, help="Largest word length inspected")
@click.option("--relation", default="~", show_default=True, help="Name of the equivalence")
@out_option
def eq_check(p: Presentation, d: EqDescriptor, bound: int, relation: str, out):
    """Compare the classes found up to the bound with a descriptor."""
    _emit(check(p, d, bound, relation).to_json(), out)


@eq.command("multiset")
@presentation_option
@click.option("--bound", type=click.IntRange(min=0), required=True, help="Largest word length inspected")
@click.option("--relation", default="~", show_default=True, help="Name of the equivalence")
@out_option
def eq_multiset(p: Presentation, bound: int, relation: str, out):
    """Class sizes of the domain words up to the bound."""
    _emit(empirical_multiset(p, bound, relation).to_json(), out)


@eq.command("count")
@descriptor_option
@click.option("--size", "sizes", type=click.IntRange(min=1), multiple=True, required=True,
              help="Class size, may be repeated")
@out_option
def eq_count(d: EqDescriptor, sizes, out):
    """Number of classes of each given size."""
    _emit({"counts": {str(k): count_to_json(class_count(d, k)) for k in sizes}}, out)


@cli.command("reach")
@presentation_option
@formula_options
@click.option("--inputs", required=True, help="Comma-separated input variables")
@click.option("--output", "output_variable", required=True, help="Output variable")
@click.option("--start", multiple=True, help="Start element, may be repeated; an empty value is the empty word")
@click.option("--steps", type=click.IntRange(min=0), required=True)
@out_option
def reach_command(p: Presentation, formula_text, formula_file, inputs, output_variable, start, steps: int, out):
    """Sizes of the neighbourhoods reached from the start elements."""
    formula = _formula(formula_text, formula_file)
    _emit(reach(p, formula, _names(inputs), output_variable, list(start), steps).to_json(), out)


def error_json(error: Exception) -> str:
    if isinstance(error, AutostructException):
        return error.to_json()
    return json.dumps({"error": f"{type(error).__name__}: {error}"})


def run(argv: typing.Sequence[str] = None) -> int:
    """Run one sub-command and return its exit code; domain errors go to stderr as one JSON line."""
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        code = cli.main(args=argv, prog_name="autostruct", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE_ERROR
    except click.Abort:
        return EXIT_USAGE_ERROR
    except (AutostructException, ValueError) as e:
        log(logging.ERROR, f"{type(e).__name__}: {e}")
        click.echo(error_json(e), err=True)
        return exit_code_for(e)
    return code if isinstance(code, int) else EXIT_OK


def main():
    sys.exit(run())
