"""
Tests for the HID SetReport packets that drive the keyboard LEDs.
"""

import os
import sys
import unittest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.transmit.hid import (PACKET_SIZE, SetReportRequest, build_set_report, hex_dump, led_bitfield,
                              parse_setup_packet, schedule_to_reports, serialize_setup_packet)
from src.transmit.modulation import (ALL_OFF, ALL_ON, LED1, LedSchedule, LedState, SymbolTiming,
                                     modulate_ask3)
from src.utils.bits import BitString
from src.utils.errors import InvariantViolation


class TestSetReport(unittest.TestCase):

    def test_all_on_fields(self):
        request = build_set_report(ALL_ON)
        self.assertEqual(request.data, 0x07)
        self.assertEqual(request.wValue, 0x0200)
        self.assertEqual(request.bmRequestType, 0x21)
        self.assertEqual(request.bRequest, 0x09)
        self.assertEqual(request.wLength, 1)

    def test_single_leds(self):
        self.assertEqual(led_bitfield(LED1), 0x01)
        self.assertEqual(led_bitfield(LedState(led2=True)), 0x02)
        self.assertEqual(led_bitfield(LedState(led3=True)), 0x04)
        self.assertEqual(led_bitfield(ALL_OFF), 0x00)

    def test_golden_all_on(self):
        packet = serialize_setup_packet(build_set_report(ALL_ON))
        self.assertEqual(hex_dump(packet), '21 09 00 02 00 00 01 00 07')

    def test_golden_interface_one(self):
        packet = serialize_setup_packet(build_set_report(ALL_ON, interface=1))
        self.assertEqual(packet, bytes.fromhex('210900020100010007'))

    def test_all_eight_states(self):
        for value in range(8):
            state = LedState(bool(value & 1), bool(value & 2), bool(value & 4))
            for interface in (0, 2, 0x1234):
                packet = serialize_setup_packet(build_set_report(state, interface))
                self.assertEqual(len(packet), PACKET_SIZE)
                header = bytes([0x21, 0x09, 0x00, 0x02, interface & 0xFF, interface >> 8, 0x01, 0x00])
                self.assertEqual(packet, header + bytes([value]))
                self.assertEqual(parse_setup_packet(packet).state, state)

    def test_round_trip(self):
        request = build_set_report(LedState(True, False, True), interface=3)
        self.assertEqual(parse_setup_packet(serialize_setup_packet(request)), request)

    def test_reserved_bit_rejected(self):
        with self.assertRaises(InvariantViolation):
            serialize_setup_packet(SetReportRequest(data=0x08))
        with self.assertRaises(InvariantViolation):
            parse_setup_packet(bytes.fromhex('210900020000010008'))

    def test_fixed_fields_checked(self):
        with self.assertRaises(InvariantViolation):
            serialize_setup_packet(SetReportRequest(bRequest=0x0A))
        with self.assertRaises(InvariantViolation):
            parse_setup_packet(b'\x21\x09')

    def test_interface_range(self):
        with self.assertRaises(InvariantViolation):
            build_set_report(ALL_ON, interface=0x10000)


class TestScheduleToReports(unittest.TestCase):

    def test_on_off(self):
        schedule = LedSchedule(((LED1, 400.0), (ALL_OFF, 400.0)))
        reports = schedule_to_reports(schedule)
        self.assertEqual([(t, r.data) for t, r in reports], [(0.0, 0x01), (400.0, 0x00)])

    def test_constant_schedule(self):
        schedule = LedSchedule(((ALL_ON, 400.0), (ALL_ON, 800.0))).merged()
        self.assertEqual(len(schedule_to_reports(schedule)), 1)

    def test_ask3_row(self):
        schedule = modulate_ask3(BitString.from_str('101'), SymbolTiming(t_all=500, t_d=200))
        reports = schedule_to_reports(schedule)
        self.assertEqual([(t, r.data) for t, r in reports], [(0.0, 0x05), (500.0, 0x00)])


if __name__ == '__main__':
    unittest.main()
