from typing import Any, Dict, List, Union

from core.domain.entities.cardinal import Cardinal
from core.domain.entities.finite_group import IntMatrix, SmithForm
from core.domain.entities.group_spec import GroupSpec
from core.domain.entities.invariants import DivisibleInvariants, SzInvariants, UlmTable
from core.domain.entities.padic import Certificate
from core.domain.entities.socle_witness import AvoidanceCertificate, ReductionTranscript, SocleWitness
from core.domain.entities.verdicts import ClassifyReport, GZeroReport
from core.domain.entities.witness import Cor2Assembly, Cor3Assembly, PropInclEntry, WitnessPairDescriptor
from core.service.parsers.spec_parser import SpecParser

SCHEMA = 'sb-abelian/1'

Json = Union[Dict[str, Any], List[Any], str, int, bool, None]


class ReportRenderer:
    """
    Перевод результатов в словари с фиксированным порядком ключей и в текст.
    """

    @staticmethod
    def envelope(command: str, body: Dict[str, Any]) -> Dict[str, Any]:
        return {'schema': SCHEMA, 'command': command, **body}

    @staticmethod
    def cardinal(value: Cardinal) -> Union[int, str]:
        return str(value) if value.infinite else value.value

    @staticmethod
    def spec(spec: GroupSpec) -> str:
        return SpecParser.spec_to_str(spec)

    @staticmethod
    def classify(spec: GroupSpec, report: ClassifyReport) -> Dict[str, Any]:
        """
        Сводка классификации: четыре условия, маршрут и признак согласованности.

        Args:
            spec (GroupSpec): Нормализованное описание.
            report (ClassifyReport): Результат classify_report.

        Returns:
            Dict[str, Any]: Словарь отчёта.
        """
        return {
            'spec': ReportRenderer.spec(spec),
            'omega_stable': report.omega_stable,
            'superstable': report.superstable,
            'sb': report.verdict.has_sb,
            'condition3': report.condition3,
            'condition4': report.condition4,
            'stability_class': report.stability_class.value,
            'route': report.verdict.route.value,
            'reason': report.verdict.reason,
            'g_zero_index': str(report.g_zero_index),
            'g_zero': ReportRenderer.g_zero(report.g_zero),
            'conditions_agree': report.conditions_agree,
        }

    @staticmethod
    def g_zero(report: GZeroReport) -> Json:
        if report is None:
            return None
        witness = None
        if report.witness is not None:
            witness = {
                'kind': report.witness.kind.value,
                'primes': list(report.witness.primes),
                'scalars': list(report.witness.scalars),
                'orders': list(report.witness.orders),
                'description': report.witness.description,
            }
        return {'index': str(report.index), 'unipotent_all': report.unipotent_all, 'witness': witness}

    @staticmethod
    def invariants(spec: GroupSpec, sz: SzInvariants, ulm: UlmTable, divisible: DivisibleInvariants) -> Dict[str, Any]:
        cardinal = ReportRenderer.cardinal
        return {
            'spec': ReportRenderer.spec(spec),
            'alpha': [{'p': p, 'k': k, 'value': cardinal(v)} for p, k, v in sz.alpha],
            'alpha_prime_families': [
                {'k': k, 'primes': str(primes), 'value': cardinal(v)} for k, primes, v in sz.alpha_prime_families
            ],
            'alpha_exponent_families': [
                {'p': p, 'exponents': str(exponents), 'value': cardinal(v)} for p, exponents, v in sz.alpha_exponent_families
            ],
            'beta': [{'p': p, 'value': cardinal(v)} for p, v in sz.beta],
            'beta_family': None if sz.beta_family is None else {
                'primes': str(sz.beta_family[0]),
                'value': cardinal(sz.beta_family[1]),
            },
            'gamma': [{'p': p, 'value': cardinal(v)} for p, v in sz.gamma],
            'bounded': sz.bounded,
            'exponent': sz.exponent,
            'nontrivial': sz.nontrivial,
            'ulm': [{'p': p, 'i': i, 'value': cardinal(v)} for p, i, v in ulm.entries],
            'ulm_prime_families': [
                {'i': i, 'primes': str(primes), 'value': cardinal(v)} for i, primes, v in ulm.prime_families
            ],
            'ulm_exponent_families': [
                {'p': p, 'exponents': str(exponents), 'value': cardinal(v)} for p, exponents, v in ulm.exponent_families
            ],
            'prufer': [{'p': p, 'value': cardinal(v)} for p, v in divisible.prufer_count],
            'rational_rank': cardinal(divisible.rational_rank),
        }

    @staticmethod
    def certificate(certificate: Certificate) -> Dict[str, Any]:
        return {
            'p': certificate.p,
            'seed': certificate.seed,
            'degree': certificate.degree,
            'height': certificate.height,
            'precision': certificate.precision,
            'candidates': certificate.candidates,
            'passed': certificate.passed,
            'relation': None if certificate.relation is None else str(certificate.relation),
        }

    @staticmethod
    def prop_incl(entries: List[PropInclEntry]) -> List[Dict[str, Any]]:
        return [{'m': entry.m, 'passed': entry.passed, 'detail': entry.detail} for entry in entries]

    @staticmethod
    def padic_witness(w: WitnessPairDescriptor) -> Dict[str, Any]:
        return {
            'p': w.p,
            'k': w.k,
            'seed': w.seed,
            'precision': w.precision,
            'gamma1': w.gamma1.truncate(w.precision),
            'gamma2': w.gamma2.truncate(w.precision),
            'h1_grid': w.h1_grid.value,
            'h2_grid': w.h2_grid.value,
            'certificate': ReportRenderer.certificate(w.certificate),
        }

    @staticmethod
    def cor2(assembly: Cor2Assembly) -> Dict[str, Any]:
        return {
            'components': [ReportRenderer.padic_witness(w) for w in assembly.components],
            'height_probes': [
                {'p': probe.p, 'samples': probe.samples, 'max_height': probe.max_height, 'all_finite': probe.all_finite}
                for probe in assembly.height_probes
            ],
            'rationale': assembly.rationale,
        }

    @staticmethod
    def cor3(assembly: Cor3Assembly) -> Dict[str, Any]:
        return {
            'k_part': ReportRenderer.spec(assembly.k_part),
            'c_part': ReportRenderer.spec(assembly.c_part),
            'd_part': ReportRenderer.spec(assembly.d_part),
            'windowed': assembly.windowed,
            'k_witness': ReportRenderer.cor2(assembly.k_witness),
            'rationale': assembly.rationale,
        }

    @staticmethod
    def avoidance(certificate: AvoidanceCertificate) -> Dict[str, Any]:
        return {
            'degree': certificate.degree,
            'height': certificate.height,
            'threshold': certificate.threshold,
            'window_size': len(certificate.window),
            'checked': certificate.checked,
            'min_nonvanishing': certificate.min_nonvanishing,
            'worst_polynomial': None if certificate.worst_polynomial is None else str(certificate.worst_polynomial),
            'passed': certificate.passed,
            'diagonal': certificate.diagonal,
            'rounds': certificate.rounds,
        }

    @staticmethod
    def socle_witness(w: SocleWitness) -> Dict[str, Any]:
        return {
            'primes': str(w.window.primes),
            'window': list(w.window.window),
            'rank': w.window.rank,
            'rank_overrides': [{'p': p, 'rank': r} for p, r in w.window.overrides],
            'sigma': [{'p': p, 'sigma': s, 'tau': t} for (p, s), (_, t) in zip(w.sigmas.sigma, w.sigmas.tau)],
            'tail_seed': w.sigmas.seed,
            'h1_grid': w.h1_grid.value,
            'h2_grid': w.h2_grid.value,
            'certificate': ReportRenderer.avoidance(w.certificate),
            'reduced': w.reduced_note,
        }

    @staticmethod
    def transcript(transcript: ReductionTranscript) -> Dict[str, Any]:
        return {
            'spec': ReportRenderer.spec(transcript.spec),
            'm': transcript.m,
            'torsion_part': ReportRenderer.spec(transcript.torsion_part),
            'reduced_part': ReportRenderer.spec(transcript.reduced_part),
            'socle': ReportRenderer.spec(transcript.socle),
            'shared': ReportRenderer.spec(transcript.shared),
            'steps': [{'name': s.name, 'detail': s.detail, 'trivial': s.trivial} for s in transcript.steps],
            'witness': ReportRenderer.socle_witness(transcript.witness),
            'lift': transcript.lift_note,
        }

    @staticmethod
    def matrix(matrix: IntMatrix) -> List[List[int]]:
        return [list(row) for row in matrix.rows]

    @staticmethod
    def smith(form: SmithForm) -> Dict[str, Any]:
        return {
            'invariant_factors': list(form.invariant_factors),
            'free_rank': form.free_rank,
            'diagonal': ReportRenderer.matrix(form.diagonal),
            'u': ReportRenderer.matrix(form.u),
            'v': ReportRenderer.matrix(form.v),
        }

    @staticmethod
    def to_text(data: Json, indent: int = 0) -> str:
        """
        Текстовая запись отчёта: ключ: значение, вложенные структуры с отступом.

        Args:
            data (Json): Отчёт.
            indent (int): Текущий отступ.

        Returns:
            str: Текст.
        """
        pad = '  ' * indent
        if isinstance(data, dict):
            lines = []
            for key, value in data.items():
                if isinstance(value, (dict, list)) and value:
                    lines.append(f'{pad}{key}:')
                    lines.append(ReportRenderer.to_text(value, indent + 1))
                else:
                    lines.append(f'{pad}{key}: {ReportRenderer._scalar(value)}')
            return '\n'.join(lines)
        if isinstance(data, list):
            lines = []
            for item in data:
                if isinstance(item, (dict, list)):
                    lines.append(f'{pad}-')
                    lines.append(ReportRenderer.to_text(item, indent + 1))
                else:
                    lines.append(f'{pad}- {ReportRenderer._scalar(item)}')
            return '\n'.join(lines)
        return pad + ReportRenderer._scalar(data)

    @staticmethod
    def _scalar(value: Any) -> str:
        if value is None:
            return '-'
        if isinstance(value, bool):
            return 'да' if value else 'нет'
        if isinstance(value, (dict, list)):
            return '[]' if isinstance(value, list) else '{}'
        return str(value)
