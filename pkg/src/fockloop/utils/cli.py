"""Shared CLI error handling and logging setup."""

import functools
import logging
from collections.abc import Callable

import typer
from rich.console import Console
from rich.logging import RichHandler

from fockloop.utils.errors import VerificationError

EXIT_IO_ERROR = 1
EXIT_USAGE_ERROR = 2
EXIT_VERIFICATION_FAILED = 3
EXIT_INTERRUPT = 130

stderr_console = Console(stderr=True)


def setup_logging(verbose: bool) -> None:
    """Route log records to stderr; stdout carries CSV/JSON output."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(message)s",
        handlers=[RichHandler(console=stderr_console, rich_tracebacks=True, show_time=True)],
        force=True,
    )


def cli_error_handler(func: Callable) -> Callable:
    """Wrap a CLI command to map exceptions onto the stable exit codes.

    0 success, 1 I/O failure, 2 usage, domain or unexpected error, 3 verification failure.
    """
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (typer.Exit, typer.Abort, typer.BadParameter, SystemExit):
            raise
        except KeyboardInterrupt:
            stderr_console.print("\n[bold yellow]Interrupted by user[/bold yellow]")
            raise typer.Exit(code=EXIT_INTERRUPT)
        except VerificationError as e:
            stderr_console.print(f"[bold red]Verification failed:[/bold red] {e}")
            raise typer.Exit(code=EXIT_VERIFICATION_FAILED)
        except OSError as e:
            stderr_console.print(f"[bold red]I/O error:[/bold red] {e}")
            raise typer.Exit(code=EXIT_IO_ERROR)
        except (ValueError, RuntimeError) as e:
            stderr_console.print(f"[bold red]Error:[/bold red] {e}")
            raise typer.Exit(code=EXIT_USAGE_ERROR)
        except Exception as e:
            stderr_console.print(f"[bold red]Unexpected error:[/bold red] {e}")
            raise typer.Exit(code=EXIT_USAGE_ERROR)

    return wrapper
