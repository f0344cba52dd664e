"""Identity checks over one engine instance, and table dumps.

Every check is a function taking (engine, rng) and returning a
CheckOutcome; a failing identity raises an AbortError carrying the
counterexample, which is turned into a failing report.
"""
from __future__ import absolute_import
import itertools
import json
import random
import time
from collections import namedtuple

from six import iteritems
from six.moves import range

from . import log
from .braidedalg import act_word, braid_tensor, right_derivation_vector, word_pairing, \
    word_pairing_dual
from .errors import AbortError, InvariantViolation, TruncationError
from .linalg import rank_dense
from .nichols import gram_rank_dims
from .polyring import (AMBIENT, WEIGHT, bgg_class, bgg_pairing_matrix, classical_invariants,
                       convert, coordinates, demazure, mu, random_poly, reflect_poly,
                       schubert_poly_A)
from .quantum import (GradedOperator, bn_generators, bn_relations, evaluator, filtration_ranks,
                      givental_kim, ideal_coordinates, prop1_sets, quantize_poly,
                      quantum_invariants, relation_operator)
from .scalars import RingElem, b_type_display
from .threadexecutor import ThreadExecutor

MYPY = False
if MYPY:
    from typing import Any, Callable, Dict, List, Optional, Sequence, Text
    from .engine import Engine

logger = log.get_logger(__name__)

PASS = "pass"
FAIL = "fail"
SKIP = "skipped"

# Full-word Gram ranks are only computed up to this many words per degree
ORACLE_WORDS = 256

CheckOutcome = namedtuple("CheckOutcome", ["status", "details"])


class CheckReport(object):
    def __init__(self,
                 check,  # type: Text
                 instance,  # type: Text
                 max_degree,  # type: Optional[int]
                 status,  # type: Text
                 seed,  # type: int
                 details=None,  # type: Optional[Dict[Text, Any]]
                 counterexample=None,  # type: Optional[Dict[Text, Any]]
                 wall_time=None,  # type: Optional[float]
                 ):
        # type: (...) -> None
        self.check = check
        self.instance = instance
        self.max_degree = max_degree
        self.status = status
        self.seed = seed
        self.details = details or {}
        self.counterexample = counterexample
        self.wall_time = wall_time

    def __repr__(self):
        return "CheckReport(%s, %s, %s)" % (self.check, self.instance, self.status)

    @property
    def failed(self):
        # type: () -> bool
        return self.status == FAIL

    def to_dict(self):
        # type: () -> Dict[Text, Any]
        data = {"check": self.check,
                "instance": self.instance,
                "max_degree": self.max_degree,
                "status": self.status,
                "seed": self.seed,
                "details": self.details}
        if self.counterexample is not None:
            data["counterexample"] = self.counterexample
        if self.wall_time is not None:
            data["wall_time"] = round(self.wall_time, 3)
        return data

    def to_json(self):
        # type: () -> Text
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_text(self):
        # type: () -> Text
        label = {PASS: "PASS", FAIL: "FAIL", SKIP: "SKIP"}[self.status]
        degree = "" if self.max_degree is None else " [D=%d]" % self.max_degree
        lines = ["%s %s %s%s" % (label, self.check, self.instance, degree)]
        if self.counterexample:
            for key, value in sorted(iteritems(self.counterexample)):
                lines.append("    %s: %s" % (key, value))
        return "\n".join(lines)


def rng_for(seed, check):
    # type: (int, Text) -> random.Random
    return random.Random("%s:%s" % (seed, check))


def belem_payload(x):
    # type: (Any) -> List[Any]
    return x.serialize()


def random_sample_degree(engine):
    # type: (Engine) -> int
    degree = engine.engine_config.random_degree
    exact = engine.basis.exact_through()
    if exact is not None:
        degree = min(degree, exact)
    return degree


def _random_polys(engine, rng, basis=WEIGHT, count=None, max_degree=None):
    coords = coordinates(engine.rs, basis)
    if max_degree is None:
        max_degree = random_sample_degree(engine)
    count = engine.engine_config.samples if count is None else count
    return [random_poly(coords, rng, max_degree) for _ in range(count)]


def check_braided(engine, rng):
    # type: (Engine, random.Random) -> CheckOutcome
    rs = engine.rs
    nb = engine.basis
    n = len(rs.roots)

    for word in itertools.product(range(n), repeat=3):
        left = _braid_sequence(rs, word, (0, 1, 0))
        right = _braid_sequence(rs, word, (1, 0, 1))
        if left != right:
            raise InvariantViolation("Braid relation fails on %r" % (word,),
                                     counterexample={"word": list(word)})

    elements = rs.enumerate_weyl()
    samples = max(1, engine.engine_config.samples // 4)
    for _ in range(samples):
        k = rng.randint(1, 3)
        xi = tuple(rng.randrange(n) for _ in range(k))
        x = tuple(rng.randrange(n) for _ in range(k))
        w = rng.choice(elements)
        value = word_pairing(rs, xi, x)
        if value != word_pairing_dual(rs, xi, x):
            raise InvariantViolation("Pairing recursions disagree",
                                     counterexample={"xi": list(xi), "x": list(x)})
        s1, wxi = act_word(w, xi)
        s2, wx = act_word(w, x)
        if s1 * s2 * word_pairing(rs, wxi, wx) != value:
            raise InvariantViolation("Pairing is not W-invariant",
                                     counterexample={"xi": list(xi), "x": list(x),
                                                     "w": w.word_label()})
        alpha = rng.randrange(n)
        expected = 0
        for y, coef in iteritems(right_derivation_vector(rs, alpha, {x: 1})):
            expected += coef * word_pairing_dual(rs, xi[:-1], y)
        if word_pairing_dual(rs, (alpha,) + xi[:-1], x) != expected:
            raise InvariantViolation("Left multiplication is not adjoint to the derivation",
                                     counterexample={"xi": list(xi[:-1]), "x": list(x),
                                                     "alpha": rs.root_label(alpha)})

    checked = 0
    for k in range(1, nb.built + 1):
        for idx in range(nb.dim(k)):
            element = nb.word_elem(nb.words[k][idx])
            for alpha in range(n):
                twice = nb.dbar(alpha, nb.dbar(alpha, element))
                if not twice.is_zero():
                    raise InvariantViolation(
                        "Twisted derivation does not square to zero",
                        counterexample={"alpha": rs.root_label(alpha),
                                        "x": belem_payload(element)})
            for w in elements:
                words = w.reduced_words()
                if len(words) < 2 or w.length() > k:
                    continue
                first = nb.dbar_word(words[0], element)
                for other in words[1:]:
                    if nb.dbar_word(other, element) != first:
                        raise InvariantViolation(
                            "Twisted derivations violate a Coxeter relation",
                            counterexample={"words": [list(words[0]), list(other)],
                                            "x": belem_payload(element)})
            checked += 1

    kernel_degrees = min(nb.built, 4)
    for k in range(2, kernel_degrees + 1):
        relation = nb.check_left_derivation_kernel(k)
        if relation is not None:
            raise InvariantViolation("Left derivation leaves the relation ideal",
                                     counterexample={"relation": sorted(
                                         [list(word), str(c)] for word, c in iteritems(relation))})
    return CheckOutcome(PASS, {"basis_elements": checked, "kernel_degrees": kernel_degrees})


def _braid_sequence(rs, word, positions):
    sign = 1
    for position in positions:
        s, word = braid_tensor(rs, word, position)
        sign *= s
    return sign, word


def check_hilbert(engine, rng):
    # type: (Engine, random.Random) -> CheckOutcome
    rs = engine.rs
    nb = engine.basis
    dims = nb.hilbert_series()
    details = {"dims": dims, "total": sum(dims), "complete": nb.complete}
    if nb.dim(1) != len(rs.roots) or dims[0] != 1:
        raise InvariantViolation("Low degrees have the wrong dimension",
                                 counterexample={"dims": dims})
    if nb.complete:
        details["top_degree"] = len(dims) - 1
        if dims != list(reversed(dims)):
            raise InvariantViolation("Hilbert series is not symmetric",
                                     counterexample={"dims": dims})
    for k in range(nb.built + 1):
        if not nb.gram_nonsingular(k):
            raise InvariantViolation("Pairing on basis words is singular",
                                     counterexample={"degree": k})
    oracle_top = 0
    while (oracle_top + 1 <= nb.built and
           len(rs.roots) ** (oracle_top + 1) <= ORACLE_WORDS):
        oracle_top += 1
    if oracle_top:
        oracle = gram_rank_dims(rs, oracle_top)
        details["oracle_dims"] = oracle
        if oracle != nb.dims()[:oracle_top + 1]:
            raise InvariantViolation("Construction disagrees with the Gram-rank oracle",
                                     counterexample={"dims": nb.dims(), "oracle": oracle})
    return CheckOutcome(PASS, details)


def check_lemma2(engine, rng):
    # type: (Engine, random.Random) -> CheckOutcome
    rs = engine.rs
    nb = engine.basis
    constants = engine.constants
    polys = _random_polys(engine, rng)
    for f in polys:
        image = mu(nb, f, constants)
        for alpha in range(rs.rank):
            expected = mu(nb, demazure(alpha, f), constants).scale(constants.c(alpha))
            if nb.dbar(alpha, image) != expected:
                raise InvariantViolation("Left derivation of μ(f) differs from μ(∂f)",
                                         counterexample={"f": f.to_string(),
                                                         "alpha": rs.root_label(alpha)})
            if nb.dbar_right(alpha, image) != expected:
                raise InvariantViolation("Right derivation of μ(f) differs from μ(∂f)",
                                         counterexample={"f": f.to_string(),
                                                         "alpha": rs.root_label(alpha)})
    killed = 0
    exact = nb.exact_through()
    for invariant in classical_invariants(rs, AMBIENT):
        if exact is not None and invariant.degree() > exact:
            continue
        image = mu(nb, invariant, constants)
        if not image.is_zero():
            raise InvariantViolation("μ does not kill an invariant",
                                     counterexample={"invariant": invariant.to_string(),
                                                     "image": belem_payload(image)})
        killed += 1
    return CheckOutcome(PASS, {"samples": len(polys), "invariants": killed})


def check_prop1(engine, rng):
    # type: (Engine, random.Random) -> CheckOutcome
    rs = engine.rs
    details = {}
    for side in ("left", "right"):
        model = engine.model(side)
        degrees = []
        for i, j in itertools.combinations(range(rs.rank), 2):
            first = model.eta(i).compose(model.eta(j))
            second = model.eta(j).compose(model.eta(i))
            mismatch = first.first_mismatch(second)
            if mismatch is not None:
                raise InvariantViolation("Quantized weights do not commute",
                                         counterexample={"side": side, "i": i + 1, "j": j + 1,
                                                         "basis": list(mismatch)})
            degrees = first.checked_degrees()
        details[side] = {"pairs": rs.rank * (rs.rank - 1) // 2,
                         "max_source_degree": max(degrees) if degrees else None}
    return CheckOutcome(PASS, details)


def check_prop1_sets(engine, rng):
    # type: (Engine, random.Random) -> CheckOutcome
    rs = engine.rs
    sets = prop1_sets(rs)
    unmatched = [pair for pair in sets.a_prime if pair not in sets.matching]
    details = {"a": len(sets.a), "b": len(sets.b), "a_prime": len(sets.a_prime),
               "b_prime": len(sets.b_prime),
               "matching": sorted(["%s,%s" % (rs.root_label(a), rs.root_label(b)),
                                   "%s,%s" % (rs.root_label(g), rs.root_label(d))]
                                  for (a, b), (g, d) in iteritems(sets.matching))}
    if unmatched or len(sets.a_prime) != len(sets.b_prime):
        raise InvariantViolation("No bijection between the pair sets",
                                 counterexample={"unmatched": [
                                     "%s,%s" % (rs.root_label(a), rs.root_label(b))
                                     for a, b in unmatched],
                                     "a_prime": len(sets.a_prime),
                                     "b_prime": len(sets.b_prime)})
    return CheckOutcome(PASS, details)


def check_prop2(engine, rng):
    # type: (Engine, random.Random) -> CheckOutcome
    rs = engine.rs
    nb = engine.basis
    model = engine.model()
    constants = engine.constants
    phi = evaluator(rs)
    invariants = quantum_invariants(rs)
    classical = classical_invariants(rs, WEIGHT)
    details = {"invariants": [f.to_string() for f in invariants]}
    for quantum, limit in zip(invariants, classical):
        if quantum.q_zero() != limit:
            raise InvariantViolation("Quantum invariant has the wrong classical limit",
                                     counterexample={"invariant": quantum.to_string()})
        for i in range(rs.rank):
            if reflect_poly(i, limit) != limit:
                raise InvariantViolation("Classical limit is not W-invariant",
                                         counterexample={"invariant": limit.to_string(),
                                                         "reflection": i + 1})
        operator = model.mu_tilde_poly(quantum)
        nonzero = operator.first_nonzero()
        if nonzero is not None:
            raise InvariantViolation("Quantized invariant is a nonzero operator",
                                     counterexample={"invariant": quantum.to_string(),
                                                     "basis": list(nonzero)})

    count = max(1, engine.engine_config.samples // 10)
    exact = nb.exact_through()
    for f in _random_polys(engine, rng, count=count):
        image = mu(nb, f, constants)
        for quantum in invariants:
            if exact is not None and f.degree() + quantum.degree() > exact:
                continue
            value = model.apply_poly(quantum, image)
            if not value.is_zero():
                raise InvariantViolation("Quantized invariant does not kill μ(f)",
                                         counterexample={"invariant": quantum.to_string(),
                                                         "f": f.to_string()})
        for i in range(rs.rank):
            if exact is not None and f.degree() + 1 > exact:
                continue
            y = phi.operators[i]
            if model.eta(i).apply(image) != mu(nb, y(f), constants):
                raise InvariantViolation("η does not intertwine with Y",
                                         counterexample={"i": i + 1, "f": f.to_string()})
            for j in range(i + 1, rs.rank):
                if exact is not None and f.degree() + 2 > exact:
                    continue
                yj = phi.operators[j]
                if mu(nb, y(yj(f)), constants) != mu(nb, yj(y(f)), constants):
                    raise InvariantViolation("Y operators do not commute under μ",
                                             counterexample={"i": i + 1, "j": j + 1,
                                                             "f": f.to_string()})

    if rs.type == "A":
        matches = []
        for e, limit in zip(givental_kim(rs), classical):
            weight = convert(e, WEIGHT)
            if ideal_coordinates(phi(weight)):
                raise InvariantViolation("Tridiagonal invariant is not killed",
                                         counterexample={"invariant": e.to_string()})
            if weight.q_zero() != limit:
                raise InvariantViolation("Tridiagonal invariant has the wrong limit",
                                         counterexample={"invariant": e.to_string()})
            matches.append(weight in invariants)
        details["tridiagonal_equal"] = matches
    return CheckOutcome(PASS, details)


def check_prop3(engine, rng):
    # type: (Engine, random.Random) -> CheckOutcome
    rs = engine.rs
    nb = engine.basis
    for side in ("left", "right"):
        model = engine.model(side)
        for root in rs.roots:
            op = model.quantize_root(root.index)
            square = op.compose(op)
            if root.index < rs.rank:
                gen = model.quantized_gen(root.index)
                expected = GradedOperator.identity(
                    nb, RingElem.monomial(rs.q_monomial(root.index), gen.c * gen.d))
                mismatch = square.first_mismatch(expected)
            else:
                mismatch = square.first_nonzero()
            if mismatch is not None:
                raise InvariantViolation("Square of a quantized generator is wrong",
                                         counterexample={"root": rs.root_label(root.index),
                                                         "side": side,
                                                         "basis": list(mismatch)})
    return CheckOutcome(PASS, {"roots": len(rs.roots), "sides": ["left", "right"],
                               "constants": engine.constants.to_dict()})


def check_corollary(engine, rng):
    # type: (Engine, random.Random) -> CheckOutcome
    rs = engine.rs
    nb = engine.basis
    model = engine.model()
    exact = nb.exact_through()
    checked = 0
    skipped = 0
    for w in rs.enumerate_weyl():
        if exact is not None and w.length() > exact:
            skipped += 1
            continue
        classical = schubert_poly_A(w) if rs.type == "A" else bgg_class(w)
        quantized = quantize_poly(rs, classical)
        try:
            lhs = model.apply_to_vacuum(quantized)
        except TruncationError:
            skipped += 1
            continue
        rhs = mu(nb, classical, engine.constants)
        if lhs != rhs:
            raise InvariantViolation("Quantized class does not reproduce μ of the class",
                                     counterexample={"w": w.word_label(),
                                                     "quantized": quantized.to_string(),
                                                     "lhs": belem_payload(lhs),
                                                     "rhs": belem_payload(rhs)})
        checked += 1
    return CheckOutcome(PASS, {"classes": "schubert" if rs.type == "A" else "bgg",
                               "checked": checked, "skipped": skipped})


def check_graded_ranks(engine, rng):
    # type: (Engine, random.Random) -> CheckOutcome
    rs = engine.rs
    histogram = rs.length_histogram()
    ranks = filtration_ranks(engine.model(), engine.basis.exact_through())
    details = {"ranks": ranks, "lengths": histogram}
    if ranks != histogram[:len(ranks)]:
        raise InvariantViolation("Filtration ranks differ from the length histogram",
                                 counterexample=details)
    bgg = []
    if len(rs.enumerate_weyl()) <= 48:
        for length in range(len(histogram)):
            matrix = bgg_pairing_matrix(rs, length)
            bgg.append(rank_dense(matrix))
        details["bgg_ranks"] = bgg
        if bgg != histogram:
            raise InvariantViolation("BGG classes are not independent",
                                     counterexample={"bgg_ranks": bgg, "lengths": histogram})
    return CheckOutcome(PASS, details)


def check_bn_relations(engine, rng):
    # type: (Engine, random.Random) -> CheckOutcome
    rs = engine.rs
    if rs.type != "B":
        return CheckOutcome(SKIP, {"reason": "bracket relations are stated for type B"})
    if engine.constants.c_long != 1 or engine.constants.c_short != 1:
        return CheckOutcome(SKIP, {"reason": "bracket relations are stated for unit constants"})
    model = engine.model()
    generators = bn_generators(model)
    counts = {}  # type: Dict[Text, int]
    for relation in bn_relations(rs.rank):
        operator = relation_operator(generators, relation)
        nonzero = operator.first_nonzero()
        if nonzero is not None:
            raise InvariantViolation("Bracket relation fails",
                                     counterexample={"relation": relation.text,
                                                     "basis": list(nonzero)})
        key = str(relation.group)
        counts[key] = counts.get(key, 0) + 1
    scalars = {}
    for i in range(rs.rank):
        scalars["q^a%d" % (i + 1)] = b_type_display(rs.q_monomial(i)).to_string()
    for root in rs.roots:
        if root.index in model.quantum_roots:
            scalars[rs.ambient_label(root.index)] = \
                b_type_display(rs.q_monomial(root.index)).to_string()
    return CheckOutcome(PASS, {"relations": counts, "display": scalars})


CHECKS = {
    "bn-relations": check_bn_relations,
    "braided": check_braided,
    "corollary": check_corollary,
    "graded-ranks": check_graded_ranks,
    "hilbert": check_hilbert,
    "lemma2": check_lemma2,
    "prop1": check_prop1,
    "prop1-sets": check_prop1_sets,
    "prop2": check_prop2,
    "prop3": check_prop3,
}  # type: Dict[Text, Callable[[Engine, random.Random], CheckOutcome]]


def resolve_checks(names):
    # type: (Sequence[Text]) -> List[Text]
    if "all" in names:
        return sorted(CHECKS)
    unknown = [name for name in names if name not in CHECKS]
    if unknown:
        raise ValueError("Unknown checks: %s" % ", ".join(unknown))
    return sorted(set(names))


def run_check(engine, name):
    # type: (Engine, Text) -> CheckReport
    config = engine.engine_config
    rng = rng_for(config.seed, name)
    start = time.time()
    counterexample = None
    try:
        outcome = CHECKS[name](engine, rng)
        status, details = outcome.status, outcome.details
    except AbortError as e:
        status = FAIL
        details = {"message": e.message}
        counterexample = e.counterexample or {}
    except Exception as e:
        logger.error("Check %s on %s raised %s" % (name, config.instance, e), exc_info=True)
        status = FAIL
        details = {"message": "%s: %s" % (type(e).__name__, e)}
        counterexample = {"error": type(e).__name__}
    elapsed = time.time() - start
    logger.info("%s %s %s in %.2fs" % (status.upper(), name, config.instance, elapsed))
    return CheckReport(name, config.instance, engine.max_degree, status, config.seed,
                       details, counterexample, elapsed if config.timings else None)


def run_suite(engine, checks, threads=None):
    # type: (Engine, Sequence[Text], Optional[int]) -> List[CheckReport]
    names = resolve_checks(checks) if checks else []
    if not names:
        return []
    # Shared state is built once before the checks fan out
    engine.basis
    thread_count = threads if threads is not None else engine.engine_config.threads
    reports = ThreadExecutor(thread_count, lambda name: run_check(engine, name)).map(names)
    return sorted(reports, key=lambda r: (r.check, r.instance))


def format_reports(reports, output_format="json"):
    # type: (Sequence[CheckReport], Text) -> Text
    if output_format == "json":
        return "\n".join(report.to_json() for report in reports)
    return "\n".join(report.to_text() for report in reports)


def q_display(rs):
    # type: (Any) -> Optional[Callable[[Any], Any]]
    return b_type_display if rs.type == "B" else None


def dump_tables(engine, what):
    # type: (Engine, Text) -> Dict[Text, Any]
    rs = engine.rs
    doc = {"instance": rs.name, "what": what}  # type: Dict[Text, Any]
    if what in ("basis", "hilbert"):
        nb = engine.basis
        dims = nb.hilbert_series()
        doc.update({"dims": dims, "total": sum(dims), "complete": nb.complete,
                    "top_degree": nb.top_degree(), "max_degree": nb.exact_through()})
        if what == "basis":
            doc["basis"] = [["".join("[%s]" % rs.root_label(i) for i in word) or "1"
                             for word in words]
                            for words in nb.words[:len(dims)]]
    elif what == "schubert":
        q_map = q_display(rs)
        rows = []
        for w in rs.enumerate_weyl():
            row = {"w": w.word_label(), "word": [i + 1 for i in w.reduced_word()],
                   "length": w.length()}
            classical = bgg_class(w)
            row["bgg"] = classical.to_string()
            row["bgg_ambient"] = convert(classical, AMBIENT).to_string()
            if rs.type == "A":
                classical = schubert_poly_A(w)
                row["schubert"] = classical.to_string()
                row["schubert_weight"] = convert(classical, WEIGHT).to_string()
            row["quantized"] = quantize_poly(rs, classical).to_string(q_map)
            rows.append(row)
        doc["rows"] = rows
    elif what == "invariants":
        q_map = q_display(rs)
        rows = []
        for quantum, limit in zip(quantum_invariants(rs), classical_invariants(rs, WEIGHT)):
            rows.append({"degree": limit.degree(),
                         "classical": convert(limit, AMBIENT).to_string(),
                         "quantum": quantum.to_string(q_map)})
        if rs.type == "A":
            for row, e in zip(rows, givental_kim(rs)):
                row["tridiagonal"] = e.to_string()
        doc["invariants"] = rows
    else:
        raise ValueError("Unknown table %r" % (what,))
    return doc


def format_table(doc, output_format="json"):
    # type: (Dict[Text, Any], Text) -> Text
    if output_format == "json":
        return json.dumps(doc, sort_keys=True, indent=1)
    lines = ["%s %s" % (doc["what"], doc["instance"])]
    if "dims" in doc:
        lines.append("dims: %s" % " ".join(str(d) for d in doc["dims"]))
        lines.append("total: %d" % doc["total"])
    for degree, words in enumerate(doc.get("basis", [])):
        lines.append("%d: %s" % (degree, " ".join(words)))
    for row in doc.get("rows", []):
        lines.append("%s: %s" % (row["w"], row.get("schubert", row["bgg"])))
        lines.append("    quantized: %s" % row["quantized"])
    for row in doc.get("invariants", []):
        lines.append("degree %d: %s" % (row["degree"], row["quantum"]))
    return "\n".join(lines)
