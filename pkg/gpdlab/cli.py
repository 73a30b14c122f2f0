"""gpdlab CLI.

Usage:
    gpdlab validate groupoid.json
    gpdlab compose-span --f f.json --g g.json
    gpdlab eval-poly --poly square.json --family x3.json --at 0
    gpdlab compare --a s1.json --b s2.json
    gpdlab check --suite all --seed 42 --json
    gpdlab check --mutate mu-flatten-order
    gpdlab config set search_budget 500000
    gpdlab config list

Exit codes: 0 success, 1 law or comparison failure, 2 parse or validation
error, 3 search budget exhausted.

Requires: pip install gpdlab[cli]
"""

from __future__ import annotations

import logging
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Iterator


def _get_app():
    """Create and return the Typer app."""
    try:
        import typer
        from rich.console import Console
        from rich.table import Table
    except ImportError:
        print("CLI requires typer and rich. Install with: pip install gpdlab[cli]")
        sys.exit(1)

    from gpdlab.exceptions import BudgetExceededError, GpdlabError, SchemaError

    app = typer.Typer(
        name="gpdlab",
        help="Spans, bags and polynomials over finite groupoids.",
        no_args_is_help=True,
    )
    config_app = typer.Typer(help="Manage configuration.")
    app.add_typer(config_app, name="config")

    console = Console()
    err_console = Console(stderr=True)

    @contextmanager
    def _guard() -> Iterator[None]:
        try:
            yield
        except BudgetExceededError as e:
            err_console.print(f"[yellow]{e}[/yellow]")
            raise typer.Exit(3)
        except SchemaError as e:
            err_console.print(f"[red]{e}[/red]")
            raise typer.Exit(2)
        except GpdlabError as e:
            err_console.print(f"[red]{type(e).__name__}: {e}[/red]")
            raise typer.Exit(2)

    def _load(path: Path, *kinds: type) -> Any:
        from gpdlab.serialize import parse_artifact

        value = parse_artifact(path)
        if kinds and not isinstance(value, kinds):
            names = " or ".join(k.__name__ for k in kinds)
            raise SchemaError(f"{path} holds a {type(value).__name__}, expected {names}")
        return value

    def _emit(value: Any, out: Path | None, summary: str) -> None:
        from gpdlab.serialize import dumps, write_artifact

        if out is not None:
            write_artifact(value, out)
            console.print(f"  [green]{summary}[/green] [dim]-> {out}[/dim]")
        else:
            typer.echo(dumps(value), nl=False)
            err_console.print(f"  [dim]{summary}[/dim]")

    def _budget(budget: int | None) -> int:
        from gpdlab.config import get_search_budget

        return get_search_budget(budget)

    @app.callback()
    def main_options(
        verbose: bool = typer.Option(False, "--verbose", "-v", help="JSON debug logs on stderr"),
    ) -> None:
        if verbose:
            from gpdlab._logging import setup_logging

            setup_logging(logging.DEBUG)

    @app.command()
    def validate(
        path: Path = typer.Argument(..., help="Artifact file"),
        output_json: bool = typer.Option(False, "--json", "-j", help="Output as JSON"),
    ) -> None:
        """Parse an artifact and check every invariant."""
        with _guard():
            value = _load(path)
        kind = type(value).__name__
        if output_json:
            console.print_json(data={"valid": True, "kind": kind, "path": str(path)})
        else:
            console.print(f"  [bold green]VALID[/bold green] {kind} [dim]{path}[/dim]")

    @app.command("compose-span")
    def compose_span_cmd(
        f: Path = typer.Option(..., "--f", help="Span a ⇸ b"),
        g: Path = typer.Option(..., "--g", help="Span b ⇸ c"),
        out: Path = typer.Option(None, "--out", "-o", help="Write the composite here"),
    ) -> None:
        """Compose two spans (g after f) by homotopy pullback."""
        from gpdlab.span import Span, span_compose

        with _guard():
            result = span_compose(_load(g, Span), _load(f, Span))
            _emit(result, out, f"composite apex: {result.apex.object_count} objects")

    @app.command("compose-poly")
    def compose_poly_cmd(
        p: Path = typer.Option(..., "--p", help="Polynomial I → J"),
        q: Path = typer.Option(..., "--q", help="Polynomial J → K"),
        out: Path = typer.Option(None, "--out", "-o", help="Write the composite here"),
    ) -> None:
        """Compose two polynomials (q after p)."""
        from gpdlab.poly import Polynomial, poly_compose

        with _guard():
            result = poly_compose(_load(q, Polynomial), _load(p, Polynomial))
            _emit(result, out, f"composite: |E|={result.E.object_count} |B|={result.B.object_count}")

    @app.command("kleisli-compose")
    def kleisli_compose_cmd(
        f: Path = typer.Option(..., "--f", help="Span !I ⇸ J"),
        g: Path = typer.Option(..., "--g", help="Span !J ⇸ K"),
        general: bool = typer.Option(False, "--general", help="Use the δ / Span(!) form"),
        out: Path = typer.Option(None, "--out", "-o", help="Write the composite here"),
    ) -> None:
        """Compose two Kleisli morphisms of the bag comonad."""
        from gpdlab.kleisli import kleisli_compose, kleisli_compose_general
        from gpdlab.serialize import as_kleisli
        from gpdlab.span import Span

        with _guard():
            kf, kg = as_kleisli(_load(f, Span)), as_kleisli(_load(g, Span))
            compose = kleisli_compose_general if general else kleisli_compose
            result = compose(kg, kf)
            _emit(result, out, f"Kleisli composite apex: {result.carrier.apex.object_count} objects")

    @app.command()
    def bang(
        span: Path = typer.Argument(..., help="Span to lift"),
        bound: int = typer.Option(2, "--bound", "-k", min=0, help="Carrier bound"),
        out: Path = typer.Option(None, "--out", "-o", help="Write the lifted span here"),
    ) -> None:
        """Lift a span along the bag functor, on bags of size ≤ bound."""
        from gpdlab.bang import bang_span
        from gpdlab.span import Span

        with _guard():
            result = bang_span(_load(span, Span), bound)
            _emit(result, out, f"bounded lift: {result.apex.object_count} bags")

    @app.command("eval-poly")
    def eval_poly_cmd(
        poly: Path = typer.Option(..., "--poly", help="Polynomial I → J"),
        family: Path = typer.Option(..., "--family", help="Family of groupoids over I"),
        at: int = typer.Option(..., "--at", help="Object of J"),
        out: Path = typer.Option(None, "--out", "-o", help="Write the groupoid here"),
    ) -> None:
        """Evaluate a polynomial functor on a family at one object of J."""
        from gpdlab.core.equivalence import gcard
        from gpdlab.core.families import FamilyOfGroupoids
        from gpdlab.poly import Polynomial, eval_at

        with _guard():
            result = eval_at(_load(poly, Polynomial), _load(family, FamilyOfGroupoids), at)
            _emit(result, out, f"gcard {gcard(result)}")

    @app.command("poly-to-span")
    def poly_to_span_cmd(
        poly: Path = typer.Option(..., "--poly", help="Finitary polynomial"),
        out: Path = typer.Option(None, "--out", "-o", help="Write the span here"),
    ) -> None:
        """The Kleisli span !I ⇸ J of a finitary polynomial."""
        from gpdlab.kleisli import poly_to_span
        from gpdlab.poly import Polynomial

        with _guard():
            result = poly_to_span(_load(poly, Polynomial))
            _emit(result, out, "Kleisli span")

    @app.command("span-to-poly")
    def span_to_poly_cmd(
        span: Path = typer.Option(..., "--span", help="Span !I ⇸ J"),
        out: Path = typer.Option(None, "--out", "-o", help="Write the polynomial here"),
    ) -> None:
        """The polynomial unfolding a Kleisli span."""
        from gpdlab.kleisli import span_to_poly
        from gpdlab.serialize import as_kleisli
        from gpdlab.span import Span

        with _guard():
            result = span_to_poly(as_kleisli(_load(span, Span)))
            _emit(result, out, f"polynomial with |E|={result.E.object_count}")

    @app.command()
    def compare(
        a: Path = typer.Option(..., "--a", help="First artifact"),
        b: Path = typer.Option(..., "--b", help="Second artifact"),
        budget: int = typer.Option(None, "--budget", help="Search budget (default: config)"),
        output_json: bool = typer.Option(False, "--json", "-j", help="Output as JSON"),
    ) -> None:
        """Decide whether two groupoids, spans or polynomials are equivalent."""
        from gpdlab.core.equivalence import find_equivalence
        from gpdlab.core.groupoid import FinGroupoid
        from gpdlab.poly import Polynomial, poly_equiv
        from gpdlab.span import Span, span_equiv

        with _guard():
            left = _load(a, FinGroupoid, Span, Polynomial)
            right = _load(b, type(left))
            steps = _budget(budget)
            if isinstance(left, Span):
                witness = span_equiv(left, right, steps)
            elif isinstance(left, Polynomial):
                witness = poly_equiv(left, right, steps)
            else:
                witness = find_equivalence(left, right, steps)

        summary = witness.summary() if witness is not None else None
        if output_json:
            console.print_json(data={"equivalent": witness is not None, "witness": summary})
        elif witness is not None:
            console.print(f"  [bold green]EQUIVALENT[/bold green] [dim]{summary}[/dim]")
        else:
            console.print("  [bold red]NOT EQUIVALENT[/bold red]")
        raise typer.Exit(0 if witness is not None else 1)

    @app.command()
    def canon(
        span: Path = typer.Argument(..., help="Span with concrete endpoints"),
        budget: int = typer.Option(None, "--budget", help="Search budget (default: config)"),
        out: Path = typer.Option(None, "--out", "-o", help="Write the canonical span here"),
    ) -> None:
        """Canonical representative of a span's equivalence class."""
        from gpdlab.span import Span, canonical_form

        with _guard():
            result = canonical_form(_load(span, Span), _budget(budget))
            _emit(result, out, f"canonical apex: {result.apex.object_count} classes")

    @app.command()
    def check(
        suite: str = typer.Option("all", "--suite", "-s", help="'all' or comma-separated law ids"),
        seed: int = typer.Option(None, "--seed", help="Suite seed (default: config)"),
        instances: int = typer.Option(None, "--instances", "-n", help="Instances per law"),
        bound: int = typer.Option(None, "--bound", "-k", help="Bang carrier bound"),
        budget: int = typer.Option(None, "--budget", help="Search budget per instance"),
        mutate: str = typer.Option(None, "--mutate", help="Switch on a seeded defect"),
        output_json: bool = typer.Option(False, "--json", "-j", help="Output as JSON"),
        out: Path = typer.Option(None, "--out", "-o", help="Write the report here"),
    ) -> None:
        """Run the law suite."""
        from gpdlab.config import load_suite_config
        from gpdlab.laws import MUTATIONS, LawId, run_suite_sync
        from gpdlab.serialize import dumps, write_artifact

        try:
            laws = None if suite == "all" else [LawId(s.strip()) for s in suite.split(",")]
        except ValueError:
            err_console.print(f"[red]Unknown law in --suite: {suite}[/red]")
            raise typer.Exit(2)
        if mutate is not None and mutate not in MUTATIONS:
            err_console.print(f"[red]Unknown mutation {mutate!r}; known: {', '.join(sorted(MUTATIONS))}[/red]")
            raise typer.Exit(2)

        with _guard():
            cfg = load_suite_config(
                seed=seed, instance_count=instances, bang_bound=bound, search_budget=budget
            )
        report = run_suite_sync(cfg, laws, mutate)
        if out is not None:
            write_artifact(report, out)

        if output_json:
            typer.echo(dumps(report), nl=False)
        else:
            table = Table(show_header=True, header_style="bold")
            table.add_column("Law", style="cyan")
            table.add_column("Pass", justify="right")
            table.add_column("Fail", justify="right")
            table.add_column("Budget", justify="right")
            table.add_column("Bounded")
            for law in report.laws:
                style = "green" if law.passed else "red"
                table.add_row(
                    f"[{style}]{law.law}[/{style}]",
                    str(law.summary["pass"]),
                    str(law.summary["fail"]),
                    str(law.summary["budget"]),
                    "yes" if law.bounded else "",
                )
            console.print()
            if mutate:
                console.print(f"  [yellow]Seeded defect:[/yellow] {mutate}")
            console.print(table)
            for law in report.laws:
                for inst in law.instances:
                    if inst.verdict != "pass":
                        console.print(f"  [red]{law.law}[/red] #{inst.seed_index}: {inst.detail}")
            console.print()

        if not report.passed and report.summary["fail"]:
            raise typer.Exit(1)
        if report.budget_exhausted:
            raise typer.Exit(3)
        raise typer.Exit(0)

    @config_app.command("set")
    def config_set(
        key: str = typer.Argument(..., help="Config key"),
        value: str = typer.Argument(..., help="Config value"),
    ) -> None:
        """Set a config value."""
        from gpdlab.config import set_config_value

        try:
            set_config_value(key, value)
            console.print(f"  [green]Set {key}[/green]")
        except GpdlabError as e:
            err_console.print(f"[red]{e}[/red]")
            raise typer.Exit(2)

    @config_app.command("list")
    def config_list() -> None:
        """Show current configuration."""
        from gpdlab.config import list_config

        table = Table(show_header=True, header_style="bold")
        table.add_column("Key", style="cyan")
        table.add_column("Value")
        for key, value in list_config().items():
            table.add_row(key, "[dim]not set[/dim]" if value is None else str(value))
        console.print()
        console.print(table)
        console.print()

    return app


app = _get_app()


def main() -> None:
    """Entry point for the CLI."""
    app()


if __name__ == "__main__":
    main()
