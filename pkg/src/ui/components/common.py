"""
Common console components for the keyboard LED channel toolkit.
Provides the shared renderers used by every subcommand.
"""

import sys
from typing import Dict, Optional, TextIO

import pandas as pd

from src.receive.demodulator import DecodeReport
from src.utils.trace_io import write_report

RULE_WIDTH = 60


def _out(stream: Optional[TextIO]) -> TextIO:
    return stream if stream is not None else sys.stdout


def _err(stream: Optional[TextIO]) -> TextIO:
    return stream if stream is not None else sys.stderr


def render_header(title: str, stream: Optional[TextIO] = None) -> None:
    """Title with a double rule underneath."""
    out = _out(stream)
    print(title, file=out)
    print("=" * min(RULE_WIDTH, max(len(title), 10)), file=out)


def render_section(title: str, stream: Optional[TextIO] = None) -> None:
    out = _out(stream)
    print(f"\n{title}", file=out)
    print("-" * min(RULE_WIDTH, max(len(title), 10)), file=out)


def render_metrics_cards(metrics: Dict[str, object], stream: Optional[TextIO] = None) -> None:
    """
    Render label/value pairs as an aligned block.

    Args:
        metrics: Dictionary of metric labels and values
        stream: Output stream (stdout by default)
    """
    if not metrics:
        return
    out = _out(stream)
    width = max(len(label) for label in metrics)
    for label, value in metrics.items():
        print(f"  {label:<{width}}  {value}", file=out)


def render_status(ok: bool, message: str, stream: Optional[TextIO] = None) -> None:
    print(f"{'✅' if ok else '❌'} {message}", file=_err(stream))


def render_warning(message: str, stream: Optional[TextIO] = None) -> None:
    print(f"⚠️  {message}", file=_err(stream))


def render_table(df: pd.DataFrame, stream: Optional[TextIO] = None) -> None:
    """CSV rendering of a result table."""
    df.to_csv(_out(stream), index=False, float_format='%.6g', lineterminator='\n')


def create_comparison_table(df: pd.DataFrame, sort_column: str, ascending: bool = True) -> pd.DataFrame:
    """Stable-sorted copy of df, for side-by-side reference/measured tables."""
    if df.empty or sort_column not in df.columns:
        return df.copy()
    return df.sort_values(sort_column, ascending=ascending, kind='mergesort').reset_index(drop=True)


def format_quantity(value: float, unit: str) -> str:
    """Engineering-prefixed value, e.g. 5.16e-07 W -> '516.1 nW'."""
    if value == 0:
        return f"0 {unit}"
    prefixes = ((1e-12, 'p'), (1e-9, 'n'), (1e-6, 'µ'), (1e-3, 'm'), (1.0, ''), (1e3, 'k'))
    scale, prefix = prefixes[0]
    for s, p in prefixes:
        if abs(value) >= s:
            scale, prefix = s, p
    return f"{value / scale:.4g} {prefix}{unit}"


def render_decode_report(report: DecodeReport, stream: Optional[TextIO] = None) -> None:
    """Human-readable decode summary followed by the key=value block."""
    out = _out(stream)
    render_header(f"📡 Decode report ({report.receiver}, {report.scheme})", out)
    metrics = {
        "Frames": len(report.frames),
        "Frames OK": report.frames_ok,
        "Frames failed": report.frames_failed,
        "Bytes recovered": len(report.recovered),
    }
    if report.timing is not None:
        t = report.timing
        metrics["Timing (us)"] = f"t_on={t.t_on:.1f} t_off={t.t_off:.1f} t_d={t.t_d:.1f} t_all={t.t_all:.1f}"
    if report.ber is not None:
        metrics["BER"] = f"{report.ber:.4%} ({report.bit_errors}/{report.bits_compared})"
    render_metrics_cards(metrics, out)

    if report.frames:
        render_section("Frames", out)
        for frame in report.frames:
            mark = '✓' if frame.ok else '✗'
            crc = ''
            if frame.crc_computed is not None:
                crc = f" crc={frame.crc_received:04X}/{frame.crc_computed:04X}"
            print(f"  {mark} #{frame.index} @ {frame.start_us / 1000:.3f} ms  {frame.status}{crc}", file=out)

    render_section("Report", out)
    write_report(report.to_dict(), out)
