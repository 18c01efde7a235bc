"""
orlov: graded commutative algebra for the singularity-category functors.

Copyright 2024 The orlov developers

This program is free software; you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation; either version 2, or (at your option)
any later version.

This program is distributed in the hope that it will be useful,
but WITHOUT ANY WARRANTY; without even the implied warranty of
MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
GNU General Public License for more details.

You should have received a copy of the GNU General Public License
along with this program; if not, write to the Free Software
Foundation, Inc., 51 Franklin St, Fifth Floor, Boston, MA 02110-1301  USA.
"""

__version__ = '1.0.0'

DEFAULT_CHARACTERISTIC = 32003
REG_SLACK = 6
ORACLE_DEGREE = 8
RESOLUTION_SLACK = 2
DENSE_THRESHOLD = 4096
CACHE_SIZE = 128


class Configuration(object):

    """Tuning knobs shared by every computation over one ring."""

    def __init__(self, **overrides):
        self.characteristic = DEFAULT_CHARACTERISTIC
        self.reg_slack = REG_SLACK
        self.oracle_degree = ORACLE_DEGREE
        self.resolution_slack = RESOLUTION_SLACK
        self.check_windows = True
        self.dense_threshold = DENSE_THRESHOLD
        self.cache_size = CACHE_SIZE
        self.retry_on_exhaustion = True
        for name, value in overrides.items():
            if not hasattr(self, name):
                raise AttributeError("unknown configuration option %r" % name)
            setattr(self, name, value)

    def as_dict(self):
        return dict(sorted(vars(self).items()))

    def copy(self, **overrides):
        values = self.as_dict()
        values.update(overrides)
        return Configuration(**values)
