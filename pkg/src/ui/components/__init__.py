"""
UI components module for the keyboard LED channel toolkit.
Contains the console renderers shared by the subcommands.
"""

from .common import (
    render_header,
    render_section,
    render_metrics_cards,
    render_status,
    render_warning,
    render_table,
    render_decode_report,
    create_comparison_table,
    format_quantity
)

__all__ = [
    'render_header',
    'render_section',
    'render_metrics_cards',
    'render_status',
    'render_warning',
    'render_table',
    'render_decode_report',
    'create_comparison_table',
    'format_quantity'
]
