"""Exception hierarchy.  Everything raised on purpose derives from SturmlabError."""


class SturmlabError(Exception):
    pass


class SpecSyntaxError(SturmlabError, ValueError):
    def __init__(self, message, text, position):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position} in {text!r}")


class SpecInvariantError(SturmlabError, ValueError):
    def __init__(self, rule, message):
        self.rule = rule
        super().__init__(f"{message} [{rule}]")


class ResourceBoundError(SturmlabError):
    """A prefix or factor table would exceed the configured expansion bound."""


class NeitherFoundError(SturmlabError):
    """Neither aa nor bb occurs in the inspected prefix."""


class BothFoundError(SturmlabError):
    """Both aa and bb occur, so the word is not balanced."""


class NotSturmianError(SturmlabError):
    """A factor table contradicts the Sturmian complexity or balance."""


class NotAFactorError(SturmlabError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class RichnessError(SturmlabError):
    """A factor is rich in no letter, or in more than one."""


class NotDecodableError(SturmlabError):
    def __init__(self, word, morphism, position):
        self.word = word
        self.morphism = morphism
        self.position = position
        super().__init__(f"{word!r} is not decodable under {morphism} (fails at position {position})")


class PreconditionError(SturmlabError, ValueError):
    pass


class NeitherCaseError(SturmlabError):
    """A monochromatic block sequence fits neither case of the two-case classification."""


class DescentAssertionError(SturmlabError):
    """A descent step broke one of its guaranteed properties."""

    def __init__(self, message, counterexample):
        self.counterexample = counterexample
        super().__init__(f"{message}: {counterexample}")


class IncompleteReportError(SturmlabError):
    pass
