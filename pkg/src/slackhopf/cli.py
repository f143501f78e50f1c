"""Command line entry point: ``slackhopf validate|slack|quasi|fincat``.

Exit status is 0 whenever a verdict was reached (whatever it says), 1 on a
parse error and 2 when an exhaustive search would exceed the budget set by
``SLACKHOPF_MAX_EXHAUSTIVE``.
"""

from __future__ import annotations

import argparse
import sys

from .algebra import validate_algebra, validate_comagma
from .bialgebra import (
    Antipode,
    LeftInverseOnly,
    build_antipode,
    counit_report,
    extract_antipode_data,
    make_counit,
)
from .errors import BoundExceeded, InvalidStructure, ParseError, PreconditionError, SlackHopfError
from .fincat import (
    exists_category_slack_hopf,
    is_group,
    is_groupoid,
    monoid_slack_hopf,
    validate_category,
    validate_monoid,
)
from .io import (
    ALG_SCHEMA,
    CAT_SCHEMA,
    MON_SCHEMA,
    AlgebraFile,
    Report,
    detect_schema,
    parse_algebra,
    parse_category,
    parse_monoid,
    parse_quasi_antipode,
    parse_tensor,
    read_text,
)
from .quasihopf import (
    LeftHopf,
    NotQuasiHopf,
    QuasiAntipode,
    QuasiBialgebra,
    check_quasi_antipode,
    classify_slack_structure,
    left_hopf_from_antipode,
    torsor_decompose,
    trivial_associator,
    validate_quasibialgebra,
)
from .slack import (
    Found,
    NoneExists,
    SlackHopfCertificate,
    Unknown,
    check_slack_hopf,
    find_slack_hopf,
    verify_adjoint_identities,
)


def _load_alg(path) -> AlgebraFile:
    return parse_algebra(read_text(path))


def _matching_tensor(path, af: AlgebraFile, rank: int = 2):
    tf = parse_tensor(read_text(path))
    if tf.field != af.field or tf.dim != af.dim or tf.tensor.ndim != rank:
        raise ParseError(f"{path}: expected a rank-{rank} tensor over {af.field.tag} in dimension {af.dim}",
                         None, "dim")
    return tf.tensor


def _comagma_or_verdict(af: AlgebraFile, report: Report):
    rep = validate_algebra(af.algebra(check=False))
    report.ledger.update({f"algebra.{k}": v for k, v in rep.ledger().items()})
    if not rep.ok:
        report.verdict = "invalid algebra"
        return None
    if af.delta is None:
        report.verdict = "no coproduct"
        return None
    C = af.comagma(check=False)
    rep = validate_comagma(C)
    report.ledger.update({f"comagma.{k}": v for k, v in rep.ledger().items()})
    if not rep.ok:
        report.verdict = "invalid comagma algebra"
        return None
    return C


def _certificate_payload(report: Report, cert: SlackHopfCertificate, af: AlgebraFile, C) -> None:
    report.certificates.update({"v": cert.v, "w": cert.w, "nabla": cert.nabla})
    report.ledger.update({f"adjoint.{k}": v for k, v in verify_adjoint_identities(cert, C).ledger().items()})
    if af.counit is None:
        report.notes.append("no counit given: σ, 𝔞, 𝔟 not computed")
        return
    eps = make_counit(C, af.counit)
    if not eps.is_left_counit:
        report.notes.append("given counit is not a left counit: σ, 𝔞, 𝔟 not computed")
        return
    data = extract_antipode_data(cert, eps)
    report.certificates.update({"sigma": data.sigma, "a": data.a_elem, "b": data.b_elem})
    report.ledger.update({f"antipode_data.{k}": v for k, v in data.checks.ledger().items()})
    if eps.is_bialgebra_counit:
        res = build_antipode(data, C, eps)
        if isinstance(res, Antipode):
            report.certificates["S"] = res.S
            report.notes.append("antipode S = 𝔞⁻¹σ𝔞")
        elif isinstance(res, LeftInverseOnly):
            report.notes.append("S is only a left convolution inverse")


def cmd_validate(path) -> Report:
    text = read_text(path)
    schema = detect_schema(text)
    if schema == CAT_SCHEMA:
        C = parse_category(text)
        rep = validate_category(C)
        return Report("validate", str(path), "valid category" if rep.ok else "invalid category",
                      ledger=rep.ledger())
    if schema == MON_SCHEMA:
        M = parse_monoid(text)
        rep = validate_monoid(M)
        return Report("validate", str(path), "valid monoid" if rep.ok else "invalid monoid", ledger=rep.ledger())
    if schema != ALG_SCHEMA:
        raise ParseError(f"validate expects an algebra, category or monoid file, got {schema}", None, "schema")
    af = parse_algebra(text)
    report = Report("validate", str(path), "", af.field)
    rep = validate_algebra(af.algebra(check=False))
    report.ledger.update({f"algebra.{k}": v for k, v in rep.ledger().items()})
    if not rep.ok:
        report.verdict = "invalid algebra"
        return report
    if af.delta is None:
        report.verdict = "valid algebra"
        return report
    C = _comagma_or_verdict(af, report)
    if C is None:
        return report
    if af.counit is None:
        report.verdict = "valid comagma algebra, no counit"
        return report
    eps = make_counit(C, af.counit)
    report.ledger.update({f"counit.{k}": v for k, v in counit_report(C, eps).ledger().items()})
    if not eps.is_bialgebra_counit:
        report.verdict = "valid comagma algebra, counit invalid"
        return report
    if af.phi is None:
        report.verdict = "valid comagma bialgebra"
        return report
    Q = QuasiBialgebra(C, eps, af.phi, af.phi_inv, check=False)
    rep = validate_quasibialgebra(Q)
    report.ledger.update({f"quasi.{k}": v for k, v in rep.ledger().items()})
    report.verdict = "valid quasi-bialgebra" if rep.ok else "invalid quasi-bialgebra"
    return report


def cmd_slack(path, check=None, find=None, seed: int = 0, trials: int = 64) -> Report:
    af = _load_alg(path)
    report = Report("slack", str(path), "", af.field)
    v_given = _matching_tensor(check, af) if check is not None else None
    C = _comagma_or_verdict(af, report)
    if C is None:
        return report
    if v_given is not None:
        res = check_slack_hopf(C, v_given)
        if not isinstance(res, SlackHopfCertificate):
            report.verdict = "NotSlack"
            report.certificates["kernel_witness"] = res.kernel[0]
            return report
        report.verdict = "Certificate"
        _certificate_payload(report, res, af, C)
        return report
    res = find_slack_hopf(C, strategy=find or "exhaustive", seed=seed, max_trials=trials)
    if isinstance(res, Found):
        report.verdict = "Found"
        report.notes.append(f"found at trial {res.trial}")
        _certificate_payload(report, res.certificate, af, C)
    elif isinstance(res, NoneExists):
        report.verdict = "NoneExists"
        report.notes.append(f"exhausted {res.candidates} candidates")
    elif isinstance(res, Unknown):
        report.verdict = "Unknown"
        report.notes.append(f"no structure among {res.trials} random trials; this is not a proof of absence")
    return report


def _quasi(af: AlgebraFile, report: Report):
    C = _comagma_or_verdict(af, report)
    if C is None:
        return None
    if af.counit is None:
        report.verdict = "NotQuasiBialgebra"
        report.notes.append("no counit given")
        return None
    phi = af.phi if af.phi is not None else trivial_associator(C.alg)
    phi_inv = af.phi_inv if af.phi_inv is not None else trivial_associator(C.alg)
    try:
        Q = QuasiBialgebra(C, af.counit, phi, phi_inv, check=False)
    except PreconditionError as exc:
        report.verdict = "NotQuasiBialgebra"
        report.notes.append(str(exc))
        return None
    rep = validate_quasibialgebra(Q)
    report.ledger.update({f"quasi.{k}": v for k, v in rep.ledger().items()})
    if not rep.ok:
        report.verdict = "NotQuasiBialgebra"
        return None
    return Q


def cmd_quasi(path, classify=None, decompose=None, antipode=None) -> Report:
    af = _load_alg(path)
    report = Report("quasi", str(path), "", af.field)
    v_given = _matching_tensor(classify or decompose, af) if (classify or decompose) else None
    qa_file = None
    if antipode is not None:
        qa_file = parse_quasi_antipode(read_text(antipode))
        if qa_file.field != af.field or qa_file.dim != af.dim:
            raise ParseError(f"{antipode}: quasi-antipode does not match the algebra", None, "dim")
    Q = _quasi(af, report)
    if Q is None:
        return report
    if qa_file is not None:
        qa = QuasiAntipode(qa_file.S, qa_file.a, qa_file.b)
        rep = check_quasi_antipode(Q, qa)
        report.ledger.update({f"qa.{k}": v for k, v in rep.ledger().items()})
        if not rep.ok:
            report.verdict = "InvalidQuasiAntipode"
            return report
        try:
            cert = left_hopf_from_antipode(Q, qa)
        except SlackHopfError as exc:
            report.verdict = "InverseMismatch"
            report.notes.append(str(exc))
            return report
        report.verdict = "ValidQuasiAntipode"
        report.certificates.update({"v": cert.v, "w": cert.w})
        report.ledger["closed_form_inverse"] = True
        return report
    cert = check_slack_hopf(Q.comagma, v_given)
    if not isinstance(cert, SlackHopfCertificate):
        report.verdict = "NotSlack"
        return report
    res = classify_slack_structure(Q, cert)
    sl = res.slackness
    report.certificates.update({"v": cert.v, "w": cert.w, "sigma": sl.sigma, "a": sl.a_elem,
                                "b": sl.b_elem, "sl": sl.value, "wbar": sl.wbar})
    if isinstance(res, LeftHopf):
        report.verdict = "LeftHopf"
    else:
        report.verdict = "SlackOnly"
        report.notes.append("sl(v) is invertible in Aᵉ" if res.invertible else "sl(v) is not invertible in Aᵉ")
    report.ledger["sl_counital"] = True
    if decompose is not None or (classify is not None and not isinstance(res, LeftHopf) and res.invertible):
        dec = torsor_decompose(Q, cert)
        if isinstance(dec, NotQuasiHopf):
            report.notes.append("decomposition: NotQuasiHopf")
        else:
            report.certificates.update({"v0": dec.v0, "gamma": dec.gamma, "b0": dec.antipode.b_elem})
            report.ledger["decomposition_round_trip"] = True
            report.notes.append("decomposition v = v0 ◁ γ emitted")
    return report


def cmd_fincat(path, kind=None) -> Report:
    text = read_text(path)
    schema = detect_schema(text)
    kind = kind or {CAT_SCHEMA: "category", MON_SCHEMA: "monoid"}.get(schema)
    if kind == "category":
        if schema != CAT_SCHEMA:
            raise ParseError(f"--kind category needs a {CAT_SCHEMA} file", None, "schema")
        C = parse_category(text)
    elif kind == "monoid":
        if schema != MON_SCHEMA:
            raise ParseError(f"--kind monoid needs a {MON_SCHEMA} file", None, "schema")
        M = parse_monoid(text)
    else:
        raise ParseError(f"fincat expects a category or monoid file, got {schema}", None, "schema")
    report = Report("fincat", str(path), "")
    if kind == "monoid":
        rep = validate_monoid(M)
        report.ledger.update(rep.ledger())
        if not rep.ok:
            report.verdict = "invalid monoid"
            return report
        w = monoid_slack_hopf(M)
        report.verdict = ("group" if is_group(M) else "not a group") + (
            f", witness ({M.labels[w.a]},{M.labels[w.b]})" if w else ", no witness")
        if not w:
            report.notes.append(f"exhausted {M.order ** 2} pairs (a, b)")
        return report
    rep = validate_category(C)
    report.ledger.update(rep.ledger())
    if not rep.ok:
        report.verdict = "invalid category"
        return report
    w = exists_category_slack_hopf(C)
    report.verdict = ("groupoid" if is_groupoid(C) else "not a groupoid") + (", witness" if w else ", no witness")
    if w:
        report.notes.append("a = " + ", ".join(f"{s}:{m}" for s, m in w.a.items()))
        report.notes.append("b = " + ", ".join(f"{s}:{m}" for s, m in w.b.items()))
    else:
        count = 1
        for s in C.objects:
            count *= len(C.hom(s, s)) ** 2
        report.notes.append(f"exhausted {count} families (a, b)")
    return report


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="slackhopf", description="Slack Hopf structures on finite-dimensional algebras.")
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check algebra, comagma, counit and associator axioms")
    v.add_argument("file")

    s = sub.add_parser("slack", help="check or search for a slack left Hopf structure")
    s.add_argument("file")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--check", metavar="VFILE", help="tensor file holding a candidate v")
    g.add_argument("--find", choices=["exhaustive", "randomized"], help="search strategy")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=64)

    q = sub.add_parser("quasi", help="quasi-antipodes, slackness and the torsor decomposition")
    q.add_argument("file")
    g = q.add_mutually_exclusive_group(required=True)
    g.add_argument("--classify", metavar="VFILE")
    g.add_argument("--decompose", metavar="VFILE")
    g.add_argument("--antipode", metavar="QAFILE")

    f = sub.add_parser("fincat", help="groupoid criterion for a finite category or monoid")
    f.add_argument("file")
    f.add_argument("--kind", choices=["category", "monoid"])
    return p


def run(args) -> Report:
    if args.command == "validate":
        return cmd_validate(args.file)
    if args.command == "slack":
        return cmd_slack(args.file, args.check, args.find, args.seed, args.trials)
    if args.command == "quasi":
        return cmd_quasi(args.file, args.classify, args.decompose, args.antipode)
    return cmd_fincat(args.file, args.kind)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = run(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except BoundExceeded as exc:
        print(f"search budget exceeded: {exc}", file=sys.stderr)
        return 2
    except InvalidStructure as exc:
        report = Report(args.command, args.file, "invalid input")
        report.notes.append(str(exc))
    print(report.dumps() if args.json else report.text())
    return 0


if __name__ == "__main__":
    sys.exit(main())
