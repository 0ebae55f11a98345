"""Exception hierarchy shared by the library and the command line."""


class HilbertDecompError(Exception):
    pass


class PreconditionError(HilbertDecompError, ValueError):
    """An operation was called on input outside its domain."""


class NegativeCoefficientError(PreconditionError):
    def __init__(self, index, value):
        super().__init__(f"series coefficient f_{index} = {value} is negative")
        self.index = index
        self.value = value


class ParseError(HilbertDecompError, ValueError):
    def __init__(self, message, position=None, text=None):
        if position is not None:
            message = f"{message} at position {position}"
            if text is not None:
                message += f"\n  {text}\n  {' ' * position}^"
        super().__init__(message)
        self.position = position
