"""Exception hierarchy. Every error the library raises derives from CoverError."""


class CoverError(Exception):
    pass


class InvalidParameter(CoverError, ValueError):
    pass


class DegreeMismatch(CoverError, ValueError):
    pass


class OrderExceedsLimit(CoverError):
    def __init__(self, order, limit, what="group"):
        super().__init__(f"{what} order {order} exceeds limit {limit}")
        self.order = order
        self.limit = limit


class NotNormal(CoverError):
    pass


class NotGenerating(CoverError):
    pass


class BudgetExceeded(CoverError):
    pass


class NeedsCertificate(CoverError):
    pass


class UnsupportedField(CoverError, ValueError):
    pass


class CosetLimitExceeded(CoverError):
    pass


class AuthorityGap(CoverError):
    def __init__(self, orders):
        orders = sorted(set(orders))
        super().__init__(f"catalog does not cover required orders {orders}")
        self.orders = orders


class EmptyFamily(CoverError, ValueError):
    pass


class NotNilpotent(CoverError):
    pass


class ParseError(CoverError, ValueError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


class OrderMismatch(CoverError):
    pass
