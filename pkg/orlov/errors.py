"""Exception taxonomy shared by the whole package."""


class OrlovError(Exception):

    """Base class for every error raised on purpose by orlov."""


class ValidationError(OrlovError):

    """Input that does not describe a valid graded object."""

    def __init__(self, message, field=None, line=None):
        super(ValidationError, self).__init__(message)
        self.message = message
        self.field = field
        self.line = line

    def __str__(self):
        location = []
        if self.line is not None:
            location.append('line %d' % self.line)
        if self.field:
            location.append(self.field)
        if location:
            return '%s: %s' % (', '.join(location), self.message)
        return self.message


class ExponentOverflow(ValidationError):

    """A monomial exponent left the 16-bit range."""


class NotGorenstein(OrlovError):

    def __init__(self, data):
        super(NotGorenstein, self).__init__(
            'ring is not Gorenstein (pd=%s, codim=%s, last rank=%s)' % (
                data.projective_dimension, data.codim, data.last_rank))
        self.data = data


class WindowExhausted(OrlovError):

    """A computation needed a term outside the computed window."""

    def __init__(self, index, window):
        super(WindowExhausted, self).__init__(
            'index %d lies outside the computed window [%d, %d]' % (
                index, window[0], window[1]))
        self.index = index
        self.window = window


class WindowViolation(OrlovError):

    """Cohomology showed up where the vanishing bounds forbid it."""

    def __init__(self, what, index, window):
        super(WindowViolation, self).__init__(
            '%s has nonzero cohomology at %d, outside [%s, %s]' % (
                what, index, window[0], window[1]))
        self.what = what
        self.index = index
        self.window = window
