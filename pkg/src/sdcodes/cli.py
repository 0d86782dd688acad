"""Command-line interface: ``sdcodes construct | analyze | lattice | search | verify-theorem``.

Exit codes: 0 success, 1 verification or precondition failure, 2 usage
error, 3 input/output error.
"""

import json
import logging
import sys

import click

from . import codes, hadamard, lattice, search
from .enumeration import EnumerationTooLarge
from .verify import verify_theorem

P = 7


class Failure(click.ClickException):
    exit_code = 1


class IOFailure(click.ClickException):
    exit_code = 3


def emit(obj):
    click.echo(json.dumps(obj))


def parse_row(length):
    def callback(ctx, param, value):
        try:
            row = [int(t) % P for t in value.split(",")]
        except ValueError:
            raise click.BadParameter("expected comma-separated integers") from None
        if len(row) != length:
            raise click.BadParameter(f"expected {length} symbols, got {len(row)}")
        return row

    return callback


def load_code(path):
    try:
        return codes.read_code(path)
    except OSError as exc:
        raise IOFailure(str(exc)) from None
    except codes.CodeError as exc:
        raise IOFailure(f"{path}: {exc}") from None


def load_sign_matrix(path):
    try:
        return hadamard.read_sign_matrix(path)
    except OSError as exc:
        raise IOFailure(str(exc)) from None
    except hadamard.HadamardError as exc:
        raise IOFailure(str(exc)) from None


def load_s2(path):
    try:
        return hadamard.load_s2(path)
    except FileNotFoundError as exc:
        raise IOFailure(str(exc)) from None
    except hadamard.HadamardError as exc:
        raise IOFailure(str(exc)) from None


def save(write, obj, out):
    try:
        write(obj, out)
    except OSError as exc:
        raise IOFailure(str(exc)) from None


@click.group()
@click.option("--threads", type=click.IntRange(min=1), default=None,
              help="Worker threads (default: all CPUs).")
@click.option("-v", "--verbose", is_flag=True, help="Log progress to stderr.")
@click.pass_context
def main(ctx, threads, verbose):
    """Self-dual codes over GF(7), skew-Hadamard matrices and D20+."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    ctx.obj = {"threads": threads}


# --- construct -----------------------------------------------------------------


@main.group()
def construct():
    """Build a code or sign matrix and write it to --out (stdout by default)."""


def _finish_code(C, out):
    summary = {"n": C.n, "k": C.k, "self_dual": codes.is_self_dual(C)}
    if out:
        save(codes.write_code, C, out)
        emit(summary)
    else:
        emit(codes.code_to_dict(C))
        click.echo(json.dumps(summary), err=True)


def _finish_matrix(H, out):
    summary = {"order": int(H.shape[0]), "skew_hadamard": hadamard.is_skew_hadamard(H)}
    if out:
        save(hadamard.write_sign_matrix, H, out)
        emit(summary)
    else:
        click.echo(hadamard.format_sign_matrix(H), nl=False)
        click.echo(json.dumps(summary), err=True)


out_option = click.option("--out", type=click.Path(dir_okay=False), default=None)


@construct.command("qr20")
@out_option
def construct_qr20(out):
    """Extended quadratic residue code of length 20."""
    _finish_code(codes.extend_qr20(), out)


@construct.command("paley20")
@out_option
def construct_paley20(out):
    """Paley skew-Hadamard matrix of order 20."""
    _finish_matrix(hadamard.paley_skew_hadamard(19), out)


@construct.command("s2")
@out_option
@click.option("--fixture", type=click.Path(dir_okay=False), default=None,
              help="Sign-matrix file to use instead of the bundled one.")
def construct_s2(out, fixture):
    """Representative of the second skew-Hadamard class of order 20."""
    _finish_matrix(load_s2(fixture), out)


@construct.command("code-from-hadamard")
@click.argument("matrix_file", type=click.Path(dir_okay=False))
@out_option
def construct_code_from_hadamard(matrix_file, out):
    """C(H): the row space of H + 2I over GF(7)."""
    H = load_sign_matrix(matrix_file)
    try:
        C = hadamard.hadamard_code(H)
    except hadamard.HadamardError as exc:
        raise Failure(f"{matrix_file}: {exc}") from None
    _finish_code(C, out)


@construct.command("four-circulant")
@click.argument("a", callback=parse_row(5))
@click.argument("b", callback=parse_row(5))
@click.option("--negacyclic", is_flag=True, help="Use negacirculant blocks.")
@out_option
def construct_four_circulant(a, b, negacyclic, out):
    """Four-circulant code with first rows A and B, e.g. 1,2,0,0,0."""
    _finish_code(codes.four_circulant(a, b, negacyclic), out)


@construct.command("double-circulant")
@click.argument("r", callback=parse_row(10))
@out_option
def construct_double_circulant(r, out):
    """Double circulant code (I | R) with first row R (10 symbols)."""
    _finish_code(codes.double_circulant(r), out)


# --- analysis ------------------------------------------------------------------


@main.command()
@click.argument("code_file", type=click.Path(dir_okay=False))
@click.pass_context
def analyze(ctx, code_file):
    """Weight enumerator and minimum weight of a code file."""
    C = load_code(code_file)
    try:
        W = codes.weight_enumerator(C, threads=ctx.obj["threads"])
    except EnumerationTooLarge as exc:
        raise Failure(str(exc)) from None
    d = next((i for i in range(1, C.n + 1) if W[i]), None)
    emit({"n": C.n, "k": C.k, "self_dual": codes.is_self_dual(C), "min_weight": d,
          "weight_enumerator": W})


@main.command("lattice")
@click.argument("code_file", type=click.Path(dir_okay=False))
@click.pass_context
def lattice_cmd(ctx, code_file):
    """Minimum norm, kissing number and D20+ verdict of A_7(C)."""
    C = load_code(code_file)
    try:
        report = lattice.kissing_number(C, threads=ctx.obj["threads"])
    except lattice.LatticeError as exc:
        raise Failure(f"{code_file}: {exc}") from None
    emit(report.to_dict())


# --- search --------------------------------------------------------------------


@main.group("search")
def search_group():
    """Search campaigns."""


@search_group.command("drt")
@click.option("--order", type=int, default=19, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--max-restarts", type=click.IntRange(min=1), default=200, show_default=True)
@out_option
def search_drt(order, seed, max_restarts, out):
    """Find a doubly regular tournament and write its skew-Hadamard matrix."""
    try:
        T = hadamard.search_drt(order, seed=seed, max_restarts=max_restarts)
    except hadamard.HadamardError as exc:
        raise click.UsageError(str(exc)) from None
    except hadamard.SearchFailure as exc:
        raise Failure(str(exc)) from None
    H = hadamard.skew_from_tournament(T)
    info = {"order": order + 1, "seed": seed}
    if order == 19:
        W = codes.weight_enumerator(hadamard.hadamard_code(H))
        info["min_weight"] = next(i for i in range(1, 21) if W[i])
        info["A_8"] = W[8]
        info["A_9"] = W[9]
    if out:
        save(hadamard.write_sign_matrix, H, out)
    else:
        click.echo(hadamard.format_sign_matrix(H), nl=False)
    click.echo(json.dumps(info), err=out is None)


def _report(campaign, out):
    if out:
        try:
            search.write_results(campaign, out)
        except OSError as exc:
            raise IOFailure(str(exc)) from None
    summary = {
        "construction": campaign.construction,
        "tallies": campaign.tallies,
        "lemma_failures": campaign.lemma_failures,
        "ledger": search.conjecture_ledger([campaign]),
    }
    emit(summary)
    if campaign.lemma_failures or summary["ledger"]["counterexamples"]:
        sys.exit(1)


@search_group.command("four-circulant")
@click.option("--negacyclic", is_flag=True)
@click.option("--resume", "checkpoint", type=click.Path(dir_okay=False), default=None,
              help="Checkpoint file, resumed from if present and updated per block.")
@click.option("--stop-after", type=click.IntRange(min=1), default=None,
              help="Stop after this many blocks (resume later with --resume).")
@out_option
@click.pass_context
def search_four_circulant(ctx, negacyclic, checkpoint, stop_after, out):
    """Exhaustive four-(nega)circulant campaign."""
    try:
        campaign = search.search_four_circulant(negacyclic, threads=ctx.obj["threads"],
                                                checkpoint=checkpoint, stop_after=stop_after)
    except (OSError, ValueError) as exc:
        raise IOFailure(str(exc)) from None
    _report(campaign, out)


@search_group.command("double-circulant")
@click.option("--exhaustive", is_flag=True, help="Scan all 7^10 first rows.")
@click.option("--count", type=click.IntRange(min=1), default=100_000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@out_option
@click.pass_context
def search_double_circulant(ctx, exhaustive, count, seed, out):
    """Double circulant campaign (sampled unless --exhaustive)."""
    mode = "exhaustive" if exhaustive else "sample"
    campaign = search.search_double_circulant(mode, count=count, seed=seed,
                                              threads=ctx.obj["threads"])
    _report(campaign, out)


@search_group.command("neighbors")
@click.option("--code", "code_file", type=click.Path(dir_okay=False), default=None,
              help="Self-dual code file (default: QR20).")
@click.option("--samples", type=click.IntRange(min=1), default=1000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@out_option
def search_neighbors(code_file, samples, seed, out):
    """Sampled neighbours C(x) of a self-dual code."""
    C = load_code(code_file) if code_file else codes.extend_qr20()
    try:
        campaign = search.search_neighbors(C, samples=samples, seed=seed)
    except codes.CodeError as exc:
        raise Failure(str(exc)) from None
    _report(campaign, out)


# --- theorem -------------------------------------------------------------------


@main.command("verify-theorem")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable report.")
@click.option("--search-s2", is_flag=True, help="Recover S2 by tournament search.")
@click.option("--fixture", type=click.Path(dir_okay=False), default=None,
              help="S2 sign-matrix file (default: bundled fixture).")
@click.option("--seed", type=int, default=0, show_default=True,
              help="Search seed used with --search-s2.")
@click.pass_context
def verify_theorem_cmd(ctx, as_json, search_s2, fixture, seed):
    """Check the chain S1, S2, QR20 -> D20+ claim by claim."""
    if search_s2:
        s2 = _search_s2(seed)
    else:
        s2 = load_s2(fixture)
    report = verify_theorem(s2, threads=ctx.obj["threads"])
    if as_json:
        emit(report.to_dict())
    else:
        for c in report.claims:
            click.echo(f"claim {c.id}: {'PASS' if c.passed else 'FAIL'}  {c.description}")
            if not c.passed:
                click.echo(f"    expected {c.expected}")
                click.echo(f"    computed {c.computed}")
        click.echo("verdict: " + ("PASS" if report.passed else "FAIL"))
    if not report.passed:
        if not as_json:
            click.echo(f"failing claims: {report.failing()}", err=True)
        sys.exit(1)


def _search_s2(seed, tries=50):
    """First tournament (seeds seed, seed+1, ...) whose code has A_8 > 0."""
    for s in range(seed, seed + tries):
        H = hadamard.skew_from_tournament(hadamard.search_drt(19, seed=s))
        W = codes.weight_enumerator(hadamard.hadamard_code(H))
        if W[8]:
            return H
    raise Failure(f"no second-class tournament found for seeds {seed}..{seed + tries - 1}")


if __name__ == "__main__":
    main()
