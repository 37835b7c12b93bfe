"""This subpackage contains unit tests of ``ska-ilc-counter``."""
