"""
Tests for the command-line entry point and the console components.
"""

import io
import os
import sys
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout

import pandas as pd

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.ui.app import EXIT_DATA, EXIT_OK, EXIT_USAGE, main
from src.ui.components import create_comparison_table, format_quantity, render_metrics_cards, render_table


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


class TestCommandLine(unittest.TestCase):

    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.folder = self._tmp.name

    def tearDown(self):
        self._tmp.cleanup()

    def path(self, name: str) -> str:
        return os.path.join(self.folder, name)

    def test_hid_packet(self):
        code, out, _ = run_cli(['hid-packet', '111'])
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out.strip(), "21 09 00 02 00 00 01 00 07")

    def test_hid_packet_bad_state(self):
        code, _, err = run_cli(['hid-packet', '12'])
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn('❌', err)

    def test_encode_decode_round_trip(self):
        data = b"keyboard LEDs carry this message"
        with open(self.path('msg.bin'), 'wb') as fh:
            fh.write(data)
        code, _, _ = run_cli(['encode', '--profile', 'dell', '--in', self.path('msg.bin'),
                              '--out', self.path('msg.csv'), '--simulate', '--sigma', '0.002'])
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(os.path.exists(self.path('msg.trace.csv')))

        code, out, _ = run_cli(['decode', '--profile', 'dell', '--in', self.path('msg.trace.csv'),
                                '--out', self.path('back.bin'), '--expect', self.path('msg.bin')])
        self.assertEqual(code, EXIT_OK)
        self.assertIn('ber=0.0', out)
        with open(self.path('back.bin'), 'rb') as fh:
            self.assertEqual(fh.read(), data)

    def test_blind_decode_of_zero_bytes(self):
        with open(self.path('zeros.bin'), 'wb') as fh:
            fh.write(bytes(5))
        code, _, _ = run_cli(['encode', '--in', self.path('zeros.bin'), '--out', self.path('zeros.csv'),
                              '--simulate', '--sigma', '0', '--scheme', 'ook', '--receiver', 'sensor'])
        self.assertEqual(code, EXIT_OK)
        code, out, _ = run_cli(['decode', '--in', self.path('zeros.trace.csv'), '--out', self.path('back.bin'),
                                '--expect', self.path('zeros.bin')])
        self.assertEqual(code, EXIT_OK)
        self.assertIn('ber=0.0', out)

    def test_ask3_sensor_rejected_at_encode(self):
        with open(self.path('msg.bin'), 'wb') as fh:
            fh.write(b"three leds")
        code, _, err = run_cli(['encode', '--scheme', 'ask3', '--receiver', 'sensor', '--in', self.path('msg.bin'),
                                '--out', self.path('msg.csv'), '--simulate'])
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn('camera', err)
        self.assertFalse(os.path.exists(self.path('msg.trace.csv')))

    def test_unknown_profile(self):
        code, _, _ = run_cli(['linkbudget', '--profile', 'commodore'])
        self.assertEqual(code, EXIT_USAGE)

    def test_missing_arguments(self):
        self.assertEqual(run_cli(['encode'])[0], EXIT_USAGE)
        self.assertEqual(run_cli([])[0], EXIT_USAGE)

    def test_malformed_trace(self):
        with open(self.path('junk.csv'), 'w') as fh:
            fh.write("not,a,trace\n1,2,3\n")
        code, _, _ = run_cli(['decode', '--in', self.path('junk.csv')])
        self.assertEqual(code, EXIT_DATA)

    def test_linkbudget(self):
        code, out, err = run_cli(['linkbudget'])
        self.assertEqual(code, EXIT_OK)
        self.assertIn('meets_target=True', out)
        self.assertIn('✅', err)

    def test_simulate_sweep(self):
        code, out, _ = run_cli(['simulate', '--profiles', 'dell', '--sigmas', '0', '--n-bits', '200'])
        self.assertEqual(code, EXIT_OK)
        lines = out.strip().splitlines()
        self.assertEqual(lines[0], 'profile,scheme,bitrate,sigma,ber')
        self.assertEqual(len(lines), 2)
        self.assertTrue(lines[1].endswith(',0'))


class TestComponents(unittest.TestCase):

    def test_format_quantity(self):
        self.assertEqual(format_quantity(0, 'W'), '0 W')
        self.assertEqual(format_quantity(5.4e-3, 'W'), '5.4 mW')
        self.assertEqual(format_quantity(5.16e-7, 'W'), '516 nW')
        self.assertEqual(format_quantity(50.26, 'm'), '50.26 m')

    def test_render_metrics_cards(self):
        out = io.StringIO()
        render_metrics_cards({"Frames": 2, "Bytes recovered": 64}, out)
        lines = out.getvalue().splitlines()
        self.assertEqual(len(lines), 2)
        self.assertEqual(lines[0].index('2'), lines[1].index('64'))

    def test_render_table_is_csv(self):
        out = io.StringIO()
        render_table(pd.DataFrame({'profile': ['dell'], 'ber': [0.03]}), out)
        self.assertEqual(out.getvalue(), "profile,ber\ndell,0.03\n")

    def test_comparison_table_sorted(self):
        df = pd.DataFrame({'profile': ['silverline', 'dell', 'lenovo'], 'ber': [0.02, 0.03, 0.0295]})
        self.assertEqual(list(create_comparison_table(df, 'profile')['profile']),
                         ['dell', 'lenovo', 'silverline'])
        self.assertEqual(list(create_comparison_table(df, 'missing')['profile']), list(df['profile']))


if __name__ == '__main__':
    unittest.main()
