"""Answer sources for membership questions.

Three implementations of the same one-method interface: a truthful
simulated user backed by a hidden network, a transcript replayer that
fails loudly on any divergence, and a blocking handoff for live sessions.
None of them sees learner state; ask takes only the assignment.
"""

from __future__ import annotations

import threading
from typing import Protocol, Sequence

from .model import Assignment, ConstraintNetwork, kappa


class Oracle(Protocol):
    def ask(self, e: Assignment) -> bool: ...


class AskTimeout(Exception):
    """No answer arrived in time; sessions treat this like their time budget."""


class ScriptMismatch(Exception):
    """A replayed session asked something the transcript does not contain."""


class ScriptExhausted(ScriptMismatch):
    """A replayed session asked more questions than the transcript holds."""


class NoPendingQuestion(Exception):
    """An answer was delivered while nothing was being asked."""


class HiddenNetworkOracle:
    """Truthful simulated user over a hidden target network.

    A partial assignment is judged only on constraints whose scope is
    fully bound: yes means "nothing decidable is violated", never
    "extendable to a solution". Answers depend only on the assignment and
    the target, so identical questions always get identical answers.
    """

    def __init__(self, target: ConstraintNetwork):
        self.target = target

    def ask(self, e: Assignment) -> bool:
        return not kappa(self.target, e)


class ScriptedOracle:
    """Replays a recorded (question, answer) transcript in order."""

    def __init__(self, script: Sequence[tuple[Assignment, bool]]):
        self._script = list(script)
        self._cursor = 0

    @property
    def exhausted(self) -> bool:
        return self._cursor >= len(self._script)

    def ask(self, e: Assignment) -> bool:
        if self._cursor >= len(self._script):
            raise ScriptExhausted(
                f"question #{self._cursor + 1} ({e!r}) goes past the end of the transcript"
            )
        expected, answer = self._script[self._cursor]
        if expected != e:
            raise ScriptMismatch(
                f"question #{self._cursor + 1}: transcript expected {expected!r}, session asked {e!r}"
            )
        self._cursor += 1
        return answer


class InteractiveOracle:
    """Blocking handoff between a session thread and an answering thread.

    At most one question is outstanding: ask() parks the session until
    deliver() supplies the answer. An optional patience limit turns an
    unanswered question into AskTimeout, which the session treats like
    its time budget expiring.
    """

    def __init__(self, timeout_seconds: float | None = None):
        self.timeout_seconds = timeout_seconds
        self._cond = threading.Condition()
        self._question: Assignment | None = None
        self._answer: bool | None = None

    def ask(self, e: Assignment) -> bool:
        with self._cond:
            if self._question is not None:
                raise RuntimeError("one question at a time")
            self._question = e
            self._answer = None
            self._cond.notify_all()
            got = self._cond.wait_for(
                lambda: self._answer is not None, timeout=self.timeout_seconds
            )
            self._question = None
            if not got:
                raise AskTimeout("no answer arrived before the patience limit")
            answer = self._answer
            self._answer = None
            return bool(answer)

    def deliver(self, answer: bool) -> None:
        with self._cond:
            if self._question is None or self._answer is not None:
                raise NoPendingQuestion("nothing is being asked")
            self._answer = bool(answer)
            self._cond.notify_all()

    @property
    def waiting(self) -> bool:
        with self._cond:
            return self._question is not None and self._answer is None

    def current_question(self) -> Assignment | None:
        with self._cond:
            return self._question
