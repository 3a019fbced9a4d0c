from django.core.exceptions import ValidationError
from django.utils.deconstruct import deconstructible
from django.utils.translation import gettext_lazy as _

from .exceptions import ParameterError


def check_window_scale(value):
    """
    Return ``value`` as an ``int`` window scale.
    Raise ``ParameterError`` unless it is an odd integer >= 3.
    """
    try:
        w = int(value)
    except (TypeError, ValueError):
        raise ParameterError('window scale must be an integer (got %r)' % (value,))
    if w != value and not isinstance(value, str):
        raise ParameterError('window scale must be an integer (got %r)' % (value,))
    if w < 3 or w % 2 == 0:
        raise ParameterError('window scale must be odd and >= 3 (got %d)' % w)
    return w


def check_cell_size(value):
    try:
        cell = float(value)
    except (TypeError, ValueError):
        raise ParameterError('cell size must be a number (got %r)' % (value,))
    if not cell > 0 or cell == float('inf'):
        raise ParameterError('cell size must be positive and finite (got %r)' % (value,))
    return cell


@deconstructible
class WindowScaleValidator:
    message = _('Enter an odd window scale of at least 3 cells (got %(value)s).')
    code = 'invalid_window_scale'

    def __call__(self, value):
        try:
            check_window_scale(value)
        except ParameterError:
            raise ValidationError(self.message, code=self.code, params={'value': value})

    def __eq__(self, other):
        return isinstance(other, self.__class__)


@deconstructible
class WindowScaleListValidator(WindowScaleValidator):
    """
    Validates a non-empty list of window scales.
    Scales need not be sorted; the sweep sorts them.
    """
    empty_message = _('Enter at least one window scale.')

    def __call__(self, value):
        if not value:
            raise ValidationError(self.empty_message, code=self.code)
        for w in value:
            super().__call__(w)


@deconstructible
class PositiveCellSizeValidator:
    message = _('Cell size must be a positive number of meters (got %(value)s).')
    code = 'invalid_cell_size'

    def __call__(self, value):
        try:
            check_cell_size(value)
        except ParameterError:
            raise ValidationError(self.message, code=self.code, params={'value': value})

    def __eq__(self, other):
        return isinstance(other, self.__class__)
