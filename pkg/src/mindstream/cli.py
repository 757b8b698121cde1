"""Command-line client for the engine: ingest, query, actors, resolve, serve.

Exit codes: 2 file problems, 3 format problems, 4 unknown actor or
request, 5 query position beyond the stream.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Optional

import click

from .lexicon import Lexicon, LexiconFormatError
from .model import WireFormatError, to_wire
from .priority import PriorityFunction
from .session import (
    FutureQueryError,
    Mode,
    Session,
    SessionConfig,
    StaleRequestError,
    UnknownRequestError,
    snapshot_to_document,
)
from .store import MalformedDocumentError, UnknownActorError

EXIT_FILE = 2
EXIT_FORMAT = 3
EXIT_UNKNOWN = 4
EXIT_FUTURE = 5

_SESSION_OPTION = click.option(
    "--session",
    "session_path",
    envvar="MINDSTREAM_SESSION",
    required=True,
    help="Session file path (or set MINDSTREAM_SESSION).",
)


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load_session(path: str) -> Session:
    try:
        return Session.load(path)
    except OSError as exc:
        _fail(EXIT_FILE, f"cannot read session: {exc}")
    except MalformedDocumentError as exc:
        _fail(EXIT_FORMAT, str(exc))


@click.group()
def main() -> None:
    """Incremental actor/collocation mind-map engine."""


@main.command()
@click.option("--input", "input_path", required=True, help="Stream file to ingest.")
@click.option(
    "--mode",
    type=click.Choice([m.value for m in Mode]),
    default=Mode.ANNOTATED.value,
    show_default=True,
)
@click.option("--lexicon", "lexicon_path", default=None, help="Lexicon file (raw mode).")
@_SESSION_OPTION
def ingest(input_path: str, mode: str, lexicon_path: Optional[str], session_path: str) -> None:
    """Stream a file through the engine and write the session file.

    Pending supervisor requests are settled non-interactively: the
    proposed default is applied when there is one, otherwise the
    sentence is discarded with a warning.
    """
    mode_value = Mode(mode)
    lexicon = None
    if mode_value is Mode.RAW:
        if lexicon_path is None:
            _fail(EXIT_FILE, "lexicon required for raw mode (--lexicon)")
        try:
            lexicon = Lexicon.from_file(lexicon_path)
        except OSError as exc:
            _fail(EXIT_FILE, f"cannot read lexicon: {exc}")
        except LexiconFormatError as exc:
            _fail(EXIT_FORMAT, str(exc))
    try:
        text = Path(input_path).read_text(encoding="utf-8")
    except OSError as exc:
        _fail(EXIT_FILE, f"cannot read input: {exc}")

    session = Session(SessionConfig(mode=mode_value), lexicon=lexicon)
    try:
        if mode_value is Mode.ANNOTATED:
            for line in text.splitlines():
                if line.strip():
                    session.step(line)
        else:
            session.step(text)
    except WireFormatError as exc:
        _fail(EXIT_FORMAT, str(exc))

    for request in list(session.pending_requests()):
        if request.proposed is not None:
            click.echo(
                f"auto-resolving {request.request_id} ({request.kind.value}) "
                f"-> {request.proposed}",
                err=True,
            )
            session.resolve(request.request_id, request.proposed)
        else:
            click.echo(
                f"discarding {request.request_id} ({request.kind.value}): "
                f"{request.sentence.text}",
                err=True,
            )
            session.discard(request.request_id)
    for fragment in session.dropped:
        click.echo(f"dropped: {fragment.to_tsv()}", err=True)

    try:
        session.save(session_path)
    except OSError as exc:
        _fail(EXIT_FILE, f"cannot write session: {exc}")
    click.echo(
        f"ingested {input_path}: {len(session.actors())} actors, "
        f"position {session.position_counter}"
    )


@main.command()
@_SESSION_OPTION
@click.option("--actor", "actor_names", multiple=True, required=True)
@click.option(
    "--fn",
    type=click.Choice([f.value for f in PriorityFunction]),
    default=PriorityFunction.F1.value,
    show_default=True,
)
@click.option("--c", "c", type=int, default=None, help="Query position (default: now).")
@click.option("--delta", type=float, default=None, help="Threshold override.")
@click.option(
    "--format",
    "output_format",
    type=click.Choice(["text", "json"]),
    default="text",
    show_default=True,
)
def query(
    session_path: str,
    actor_names: tuple[str, ...],
    fn: str,
    c: Optional[int],
    delta: Optional[float],
    output_format: str,
) -> None:
    """Print the priority list for one or more actors."""
    session = _load_session(session_path)
    try:
        snapshots = session.story_line(actor_names, PriorityFunction(fn), c, delta)
    except UnknownActorError as exc:
        _fail(EXIT_UNKNOWN, f"unknown actor: {exc}")
    except FutureQueryError as exc:
        _fail(EXIT_FUTURE, str(exc))

    if output_format == "json":
        documents = [snapshot_to_document(s) for s in snapshots]
        payload = documents[0] if len(documents) == 1 else documents
        click.echo(json.dumps(payload, ensure_ascii=False, indent=2))
        return
    for snapshot in snapshots:
        if len(snapshots) > 1:
            click.echo(f"# {snapshot.actor}")
        for entry in snapshot.entries:
            obj = entry.key.object if entry.key.object is not None else "-"
            click.echo(f"{entry.key.verb}\t{obj}\t{entry.display}")


@main.command()
@_SESSION_OPTION
def actors(session_path: str) -> None:
    """List discovered actors in first-appearance order."""
    session = _load_session(session_path)
    for name in session.actors():
        click.echo(name)


@main.command()
@_SESSION_OPTION
@click.argument("request_id")
@click.argument("actor_name", required=False)
@click.option("--discard", is_flag=True, help="Drop the held-back sentence instead.")
def resolve(
    session_path: str, request_id: str, actor_name: Optional[str], discard: bool
) -> None:
    """Settle one pending supervisor request and save the session."""
    if discard == (actor_name is not None):
        _fail(EXIT_FORMAT, "provide either an actor name or --discard")
    session = _load_session(session_path)
    try:
        if discard:
            delta = session.discard(request_id)
        else:
            delta = session.resolve(request_id, actor_name)
    except (UnknownRequestError, StaleRequestError) as exc:
        _fail(EXIT_UNKNOWN, str(exc))
    try:
        session.save(session_path)
    except OSError as exc:
        _fail(EXIT_FILE, f"cannot write session: {exc}")
    for collocation in delta.emitted:
        click.echo(to_wire(collocation))


@main.command()
@click.option(
    "--session",
    "session_path",
    envvar="MINDSTREAM_SESSION",
    default=None,
    help="Session file to serve (omit for a fresh raw session).",
)
@click.option("--lexicon", "lexicon_path", default=None, help="Lexicon for a fresh session.")
@click.option("--bind", default="127.0.0.1:8000", show_default=True, help="host:port")
def serve(session_path: Optional[str], lexicon_path: Optional[str], bind: str) -> None:
    """Run the HTTP service around a session."""
    import uvicorn

    from .service import create_app

    if session_path is not None:
        session = _load_session(session_path)
    else:
        lexicon = None
        if lexicon_path is not None:
            try:
                lexicon = Lexicon.from_file(lexicon_path)
            except OSError as exc:
                _fail(EXIT_FILE, f"cannot read lexicon: {exc}")
            except LexiconFormatError as exc:
                _fail(EXIT_FORMAT, str(exc))
            session = Session(SessionConfig(mode=Mode.RAW), lexicon=lexicon)
        else:
            session = Session(SessionConfig(mode=Mode.ANNOTATED))
    host, _, port_s = bind.partition(":")
    try:
        port = int(port_s) if port_s else 8000
    except ValueError:
        _fail(EXIT_FORMAT, f"invalid --bind {bind!r}")
    uvicorn.run(create_app(session), host=host or "127.0.0.1", port=port)


if __name__ == "__main__":
    main()
