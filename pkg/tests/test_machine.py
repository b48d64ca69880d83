import random

import pytest
from ceerlab.CeerLabError import CeerLabError, SpecParseError, WordError
from ceerlab.Machine.Machine import DEFAULT_MACHINE, Machine, phi_stage, we_stage
from ceerlab.Machine.encoding import (
    decode_instruction,
    decode_program,
    encode_instruction,
    encode_program,
    encode_tuple,
    pad,
    pair,
    unpair,
    validate_word,
    word_code,
    word_decode,
)
from ceerlab.Machine.parsers.asm_parser import assemble, disassemble, parse_asm
from ceerlab.models import Instruction, Opcode, OutcomeStatus
from helpers_for_testing import (
    EMPTY_PROGRAM,
    SUCCESSOR,
    copy_identity_index,
    doubling_index,
    loop_index,
    zero_only_index,
)


# =============================================================================
# Tests for the Cantor pairing
# =============================================================================


class TestPairing:
    """Tests for pair / unpair."""

    def test_first_values(self):
        """Should give <0,0>=0, <1,0>=1, <0,1>=2, <2,0>=3."""
        assert pair(0, 0) == 0
        assert pair(1, 0) == 1
        assert pair(0, 1) == 2
        assert pair(2, 0) == 3

    def test_unpair_inverts_pair(self):
        """Should recover every pair with coordinates below 60."""
        for x in range(60):
            for y in range(60):
                assert unpair(pair(x, y)) == (x, y)

    def test_unpair_is_onto(self):
        """Should map every code back to itself through pair."""
        for n in range(3000):
            assert pair(*unpair(n)) == n

    def test_encode_tuple(self):
        """Should nest pairs to the right."""
        assert encode_tuple(()) == 0
        assert encode_tuple((7,)) == 7
        assert encode_tuple((1, 2)) == pair(1, 2)
        assert encode_tuple((1, 2, 3)) == pair(1, pair(2, 3))


# =============================================================================
# Tests for program numbering
# =============================================================================


class TestProgramNumbering:
    """Tests for decode_program / encode_program."""

    def test_zero_is_the_empty_program(self):
        """Should decode 0 to the empty program and encode it back to 0."""
        program = decode_program(0)
        assert program.code == ()
        assert encode_program(program.code) == 0

    def test_small_indices(self):
        """Should decode 1 to [HALT] and 2 to [INC 0]."""
        assert decode_program(1).code == (Instruction(Opcode.HALT),)
        assert decode_program(2).code == (Instruction(Opcode.INC, register=0),)

    def test_round_trip_on_an_initial_segment(self):
        """Should re-encode every decoded program below 5000 to its index."""
        for e in range(5000):
            program = decode_program(e)
            assert program.index == e
            assert encode_program(program.code) == e

    def test_round_trip_on_sampled_indices(self):
        """Should be total and bijective on sampled indices up to 10^6."""
        rng = random.Random(7)
        for _ in range(500):
            e = rng.randrange(10**6 + 1)
            assert encode_program(decode_program(e).code) == e

    def test_instruction_codes_are_bijective(self):
        """Should round-trip every instruction code below 2000."""
        for c in range(2000):
            assert encode_instruction(decode_instruction(c)) == c

    def test_pad_keeps_the_function(self):
        """Should give a different index computing the same values."""
        for e in (SUCCESSOR, copy_identity_index(), doubling_index()):
            padded = pad(e, 2)
            assert padded != e
            for i in range(10):
                assert DEFAULT_MACHINE.evaluate(padded, i) == DEFAULT_MACHINE.evaluate(e, i)


# =============================================================================
# Tests for bounded execution
# =============================================================================


class TestPhiStage:
    """Tests for phi_stage and the step convention."""

    def test_stage_zero_is_undefined(self):
        """Should be undefined at stage 0 for every program and input."""
        for e in range(30):
            for i in range(5):
                assert phi_stage(e, i, 0) is None

    def test_empty_program_is_the_identity(self):
        """Should return the input once it is below the stage."""
        assert phi_stage(EMPTY_PROGRAM, 5, 6) == 5
        assert phi_stage(EMPTY_PROGRAM, 5, 5) is None

    def test_copy_identity(self):
        """Should compute i on inputs 0..20."""
        p = copy_identity_index()
        for i in range(21):
            assert phi_stage(p, i, 1000) == i

    def test_copy_identity_step_count(self):
        """Should need 6x + 3 steps on input x."""
        p = copy_identity_index()
        assert phi_stage(p, 5, 33) == 5
        assert phi_stage(p, 5, 32) is None

    def test_doubling(self):
        """Should compute 2x within 10x + 3 steps."""
        d = doubling_index()
        for x in range(15):
            assert phi_stage(d, x, 10 * x + 3) == 2 * x
        assert phi_stage(d, 4, 42) is None

    def test_value_below_stage(self):
        """Should only be defined with a value below the stage."""
        for e in range(40):
            for i in range(6):
                for s in range(0, 30, 3):
                    v = phi_stage(e, i, s)
                    if v is not None:
                        assert v < s

    def test_monotone_in_the_stage(self):
        """Should keep a value once it is defined."""
        rng = random.Random(3)
        for _ in range(300):
            e, i, s = rng.randrange(200), rng.randrange(10), rng.randrange(60)
            v = phi_stage(e, i, s)
            if v is not None:
                assert phi_stage(e, i, s + 1) == v
                assert phi_stage(e, i, s + 17) == v

    def test_deterministic_across_machines(self):
        """Should answer the same on a fresh machine as on the shared one."""
        fresh = Machine()
        for e in range(60):
            for i in range(4):
                assert fresh.phi_stage(e, i, 40) == phi_stage(e, i, 40)

    def test_query_order_does_not_matter(self):
        """Should give the same answers when stages are asked out of order."""
        machine = Machine()
        d = doubling_index()
        late = machine.phi_stage(d, 3, 100)
        early = machine.phi_stage(d, 3, 10)
        assert late == 6
        assert early is None


class TestMachineOutcome:
    """Tests for Machine.outcome, cycle detection and convergence."""

    def test_halt_costs_one_step(self):
        """Should halt [HALT] after exactly one step."""
        machine = Machine()
        assert machine.outcome(1, 3, 0).status == OutcomeStatus.RUNNING
        outcome = machine.outcome(1, 3, 1)
        assert outcome.halted
        assert outcome.value == 3
        assert outcome.steps == 1

    def test_empty_program_needs_no_step(self):
        """Should halt the empty program with zero steps."""
        outcome = Machine().outcome(EMPTY_PROGRAM, 4, 0)
        assert outcome.halted
        assert outcome.steps == 0

    def test_loop_never_halts(self):
        """Should never halt JMP 0, whatever the budget."""
        machine = Machine()
        e = loop_index()
        assert machine.phi_stage(e, 0, 10_000) is None
        assert machine.convergence(e, 3, 10_000) is None

    def test_zero_only_program(self):
        """Should halt on 0 and run forever elsewhere."""
        e = zero_only_index()
        assert phi_stage(e, 0, 5) == 0
        for i in range(1, 8):
            assert phi_stage(e, i, 5000) is None

    def test_convergence_stage(self):
        """Should report the first stage at which phi_{e,s}(i) is defined."""
        d = doubling_index()
        assert Machine().convergence(d, 4, 1000) == (43, 8)
        assert Machine().convergence(EMPTY_PROGRAM, 9, 100) == (10, 9)
        assert Machine().convergence(d, 4, 42) is None

    def test_cache_is_transparent(self):
        """Should give the same answers after clearing the cache."""
        machine = Machine()
        before = [machine.phi_stage(e, 2, 25) for e in range(50)]
        assert machine.cached_runs > 0
        machine.clear()
        assert [machine.phi_stage(e, 2, 25) for e in range(50)] == before

    def test_run_cache_is_bounded(self):
        """Should keep at most max_runs executions and restart evicted ones."""
        machine = Machine(max_runs=5)
        expected = [Machine().phi_stage(e, 2, 25) for e in range(50)]
        assert [machine.phi_stage(e, 2, 25) for e in range(50)] == expected
        assert machine.cached_runs == 5

        d = doubling_index()
        assert machine.convergence(d, 4, 20) is None
        for e in range(10):
            machine.phi_stage(e, 0, 5)
        assert machine.cached_runs == 5
        assert machine.convergence(d, 4, 1000) == (43, 8)

    def test_recently_used_runs_stay(self):
        machine = Machine(max_runs=2)
        machine.outcome(SUCCESSOR, 1, 5)
        machine.outcome(SUCCESSOR, 2, 5)
        machine.outcome(SUCCESSOR, 1, 5)
        machine.outcome(SUCCESSOR, 3, 5)
        assert set(machine._runs) == {(SUCCESSOR, 1), (SUCCESSOR, 3)}

    def test_max_runs_must_be_positive(self):
        with pytest.raises(CeerLabError, match="max_runs"):
            Machine(max_runs=0)


class TestWeStage:
    """Tests for we_stage."""

    def test_stage_zero_is_empty(self):
        """Should be empty at stage 0."""
        assert we_stage(copy_identity_index(), 0) == frozenset()

    def test_identity_domain_is_an_initial_segment(self):
        """Should enumerate 0..49 by stage 300 for the copying identity."""
        W = we_stage(copy_identity_index(), 300)
        assert W == frozenset(range(50))

    def test_monotone(self):
        """Should only grow with the stage."""
        for e in range(30):
            for s in range(0, 40, 4):
                assert we_stage(e, s) <= we_stage(e, s + 1)


# =============================================================================
# Tests for word coding
# =============================================================================


class TestWordCoding:
    """Tests for word_code / word_decode."""

    def test_first_codes(self):
        """Should number words length-lexicographically with a < b."""
        assert [word_code(w) for w in ["a", "b", "aa", "ab", "ba", "bb", "aaa"]] == list(range(7))

    def test_decode(self):
        """Should decode 6 to aaa."""
        assert word_decode(6) == "aaa"
        assert word_decode(0) == "a"

    def test_round_trip(self):
        """Should be a bijection on codes below 2000."""
        for n in range(2000):
            assert word_code(word_decode(n)) == n

    def test_rejects_empty_word(self):
        """Should reject the empty word."""
        with pytest.raises(WordError):
            word_code("")

    def test_rejects_foreign_symbols(self):
        """Should reject symbols outside {a, b}."""
        with pytest.raises(WordError, match="outside"):
            validate_word("abc")


# =============================================================================
# Tests for the assembler
# =============================================================================


class TestAssembler:
    """Tests for parse_asm / assemble / disassemble."""

    def test_parse_all_mnemonics(self):
        """Should parse each mnemonic with its operands."""
        code = parse_asm("INC 3\nJZDEC 1 5\nJMP 2\nHALT\n")
        assert code == (
            Instruction(Opcode.INC, register=3),
            Instruction(Opcode.JZDEC, register=1, target=5),
            Instruction(Opcode.JMP, target=2),
            Instruction(Opcode.HALT),
        )

    def test_comments_labels_and_case(self):
        """Should skip comments and blank lines and accept labels."""
        code = parse_asm("# successor\n\n0: inc 0   # bump\n")
        assert code == (Instruction(Opcode.INC, register=0),)

    def test_assemble_successor(self):
        """Should assemble [INC 0] to index 2."""
        assert assemble("INC 0").index == SUCCESSOR

    def test_disassemble_round_trip(self):
        """Should reassemble a disassembled program to the same index."""
        d = doubling_index()
        assert assemble(disassemble(d)).index == d
        assert disassemble(SUCCESSOR) == "INC 0\n"

    def test_unknown_mnemonic(self):
        """Should report line and column of an unknown instruction."""
        with pytest.raises(SpecParseError) as info:
            parse_asm("INC 0\n  FOO 1\n")
        assert (info.value.line, info.value.column) == (2, 3)

    def test_missing_operand(self):
        """Should reject JZDEC with one operand."""
        with pytest.raises(SpecParseError, match="2 operand"):
            parse_asm("JZDEC 1")

    def test_bad_operand(self):
        """Should point at a non-numeric operand."""
        with pytest.raises(SpecParseError) as info:
            parse_asm("INC x")
        assert info.value.column == 5

    @pytest.mark.parametrize("source", ["INC ²", "JZDEC 0 ٣", "²: INC 0"])
    def test_only_ascii_digits_are_operands(self, source):
        """Should raise a positioned parse error rather than a bare ValueError."""
        with pytest.raises(SpecParseError) as info:
            parse_asm(source)
        assert info.value.line == 1
