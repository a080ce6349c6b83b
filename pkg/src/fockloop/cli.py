"""Console script for fockloop."""

import typer

from fockloop import __version__
from fockloop.iterate.cli import run
from fockloop.optimize.cli import optimize
from fockloop.sweep.cli import sweep
from fockloop.verify.cli import verify
from fockloop.wigner.cli import wigner

app = typer.Typer()


@app.command()
def version():
    """Display version information."""
    typer.echo(f"fockloop v{__version__}")
    raise typer.Exit()


app.command()(run)
app.command()(sweep)
app.command()(optimize)
app.command()(wigner)
app.command()(verify)


if __name__ == "__main__":
    app()
