"""props.py: numpy-backed property classes for sensor data"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function
from __future__ import unicode_literals

import numpy as np
import properties

from .utils import TWO_PI, wrap_angle


class Angle(properties.Float):
    """Property for angles in radians

    **Available keywords** (in addition to those inherited from
    :class:`properties.Float`):

    * **wrap** - If True, values are normalized into [0, 2*pi) on
      validation. Default is False.
    """

    class_info = 'an angle in radians'

    @property
    def wrap(self):
        """Normalize the angle into [0, 2*pi)"""
        return getattr(self, '_wrap', False)

    @wrap.setter
    def wrap(self, value):
        if not isinstance(value, bool):
            raise TypeError('wrap must be a boolean')
        self._wrap = value

    def validate(self, instance, value):
        """Check the value is a float, wrapping it if requested"""
        value = super(Angle, self).validate(instance, value)
        if self.wrap:
            value = float(wrap_angle(value))
        return value

    @property
    def info(self):
        info = super(Angle, self).info
        if self.wrap:
            info += ', wrapped into [0, {:.6f})'.format(TWO_PI)
        return info


class SnrDb(properties.Float):
    """Property for SNR values in dB

    :code:`inf` marks a noiseless point and compares equal to itself.
    """

    class_info = 'an SNR in dB'

    def equal(self, value_a, value_b):
        if value_a == value_b:
            return True
        return super(SnrDb, self).equal(value_a, value_b)


class CoercedArray(properties.Array):
    """Base class for arrays that are cast to a fixed numpy dtype

    Unlike :class:`properties.Array`, lists and arrays of any numeric
    kind are accepted and cast; the stored value always has the
    dtype given by :code:`cast_dtype`.
    """

    cast_dtype = np.float64

    @property
    def wrapper(self):
        """Cast input to a contiguous array of :code:`cast_dtype`"""
        cast_dtype = self.cast_dtype

        def _cast(value):
            if (
                    not np.issubdtype(cast_dtype, np.complexfloating) and
                    np.iscomplexobj(value)
            ):
                raise TypeError('Cannot discard imaginary part')
            return np.ascontiguousarray(value, dtype=cast_dtype)

        return _cast

    def validate(self, instance, value):
        """Cast to :code:`cast_dtype`, then check shape"""
        if not isinstance(value, (tuple, list, np.ndarray)):
            self.error(instance, value)
        try:
            value = self.wrapper(value)
        except (TypeError, ValueError):
            self.error(instance, value, extra='Cannot cast array.')
        return super(CoercedArray, self).validate(instance, value)


class RealArray(CoercedArray):
    """Property for float64 arrays"""

    class_info = 'a real array'
    cast_dtype = np.float64

    @property
    def dtype(self):
        return (float,)


class ComplexArray(CoercedArray):
    """Property for complex128 arrays, e.g. snapshot matrices

    Real input is promoted to complex.
    """

    class_info = 'a complex array'
    cast_dtype = np.complex128

    @property
    def dtype(self):
        return (complex,)

    @staticmethod
    def to_json(value, **kwargs):
        """Convert array to a pair of real/imaginary JSON lists"""
        return {
            'real': properties.Array.to_json(np.real(value)),
            'imag': properties.Array.to_json(np.imag(value)),
        }

    @staticmethod
    def from_json(value, **kwargs):
        real = np.array(value['real']).astype(float)
        imag = np.array(value['imag']).astype(float)
        return real + 1j*imag

    def deserialize(self, value, **kwargs):
        if value is None:
            return None
        return self.from_json(value)
