"""
Propagación de Paulis a través de circuitos de Clifford
=======================================================

Utilidades sobre stim para:
- Conjugar una cadena de Pauli por un circuito de Clifford (C·P·C†)
- Preparar autoestados +1 de X, Y o Z
- Sintetizar circuitos de preparación a partir de estabilizadores

Autor: Proyecto Probabilidades
Fecha: 18 de octubre de 2026
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import stim

from circuito_dinamico import COMPUERTAS_CLIFFORD, Instruccion


NOMBRES_STIM = {"H": "H", "S": "S", "SDG": "S_DAG", "X": "X", "Y": "Y", "Z": "Z",
                "CX": "CX", "CZ": "CZ", "SWAP": "SWAP"}
DESDE_STIM = {"H": "H", "S": "S", "S_DAG": "SDG", "X": "X", "Y": "Y", "Z": "Z",
              "CX": "CX", "CNOT": "CX", "ZCX": "CX", "CZ": "CZ", "ZCZ": "CZ", "SWAP": "SWAP"}

Operacion = Union[Instruccion, Tuple[str, Sequence[int]]]


@dataclass(frozen=True)
class CadenaPauli:
    """
    Cadena de Pauli con signo

    Parameters:
    -----------
    letras : str
        Una letra de {I, X, Y, Z} por qubit (qubit 0 a la izquierda)
    signo : int
        +1 o −1
    """
    letras: str
    signo: int = 1

    def __post_init__(self):
        if not self.letras or set(self.letras) - set("IXYZ"):
            raise ValueError(f"❌ Cadena de Pauli inválida: '{self.letras}'")
        if self.signo not in (1, -1):
            raise ValueError(f"❌ Signo inválido: {self.signo}")

    @property
    def peso(self) -> int:
        return sum(1 for l in self.letras if l != "I")

    def a_stim(self) -> stim.PauliString:
        return stim.PauliString(("+" if self.signo > 0 else "-") + self.letras.replace("I", "_"))

    @classmethod
    def desde_stim(cls, ps: stim.PauliString) -> "CadenaPauli":
        signo = ps.sign
        if signo not in (1, -1):
            raise ValueError(f"❌ Signo no real tras la conjugación: {signo}")
        letras = "".join("IXYZ"[ps[k]] for k in range(len(ps)))
        return cls(letras, int(signo.real))

    def __str__(self) -> str:
        return ("+" if self.signo > 0 else "-") + self.letras


def _nombre_y_qubits(op: Operacion) -> Tuple[str, Tuple[int, ...]]:
    if isinstance(op, Instruccion):
        if not op.es_compuerta:
            raise ValueError("❌ Solo se pueden propagar compuertas")
        return op.nombre, op.qubits
    nombre, qubits = op
    return nombre, tuple(qubits)


def tableau_de(operaciones: Sequence[Operacion], num_qubits: int) -> stim.Tableau:
    """Tableau de la secuencia de Clifford (en orden temporal)."""
    tableau = stim.Tableau(num_qubits)
    for op in operaciones:
        nombre, qubits = _nombre_y_qubits(op)
        if nombre not in COMPUERTAS_CLIFFORD:
            raise ValueError(f"❌ Compuerta no Clifford: {nombre}")
        if max(qubits) >= num_qubits:
            raise ValueError(f"❌ Qubit {max(qubits)} fuera de rango ({num_qubits})")
        tableau.append(stim.Tableau.from_named_gate(NOMBRES_STIM[nombre]), list(qubits))
    return tableau


def propagate_pauli(operaciones: Sequence[Operacion], P: CadenaPauli) -> CadenaPauli:
    """
    Conjugar P por el circuito: devuelve C·P·C†

    Parameters:
    -----------
    operaciones : list
        Compuertas de Clifford (Instruccion o tuplas (nombre, qubits))
    P : CadenaPauli
        Pauli de entrada sobre todos los qubits

    Returns:
    --------
    CadenaPauli
    """
    tableau = tableau_de(operaciones, len(P.letras))
    return CadenaPauli.desde_stim(tableau(P.a_stim()))


def prepare_pauli_eigenstate(letra: str) -> List[str]:
    """Compuertas que llevan |0⟩ al autoestado +1 de la letra dada."""
    preparaciones = {"I": [], "Z": [], "X": ["H"], "Y": ["H", "S"]}
    if letra not in preparaciones:
        raise ValueError(f"❌ Letra de Pauli inválida: {letra}")
    return list(preparaciones[letra])


def cambio_base_medicion(letra: str) -> List[str]:
    """Compuertas que rotan la base de la letra dada a la base Z."""
    cambios = {"I": [], "Z": [], "X": ["H"], "Y": ["SDG", "H"]}
    if letra not in cambios:
        raise ValueError(f"❌ Letra de Pauli inválida: {letra}")
    return list(cambios[letra])


def sintetizar_preparacion(estabilizadores: Sequence[str]) -> List[Tuple[str, Tuple[int, ...]]]:
    """
    Circuito de Clifford que prepara el estado estabilizado por la lista dada

    Usa la eliminación de stim; el resultado se traduce a las compuertas
    del conjunto soportado.
    """
    tableau = stim.Tableau.from_stabilizers([stim.PauliString(s) for s in estabilizadores])
    circuito = tableau.to_circuit("elimination")
    operaciones: List[Tuple[str, Tuple[int, ...]]] = []
    for instr in circuito:
        if instr.name == "TICK":
            continue
        if instr.name not in DESDE_STIM:
            raise ValueError(f"❌ Compuerta de stim no soportada: {instr.name}")
        nombre = DESDE_STIM[instr.name]
        objetivos = [t.value for t in instr.targets_copy()]
        aridad = 2 if nombre in ("CX", "CZ", "SWAP") else 1
        for k in range(0, len(objetivos), aridad):
            operaciones.append((nombre, tuple(objetivos[k:k + aridad])))
    return operaciones


def conmutan(a: str, b: str) -> bool:
    """True si las cadenas de Pauli a y b conmutan."""
    return stim.PauliString(a.replace("I", "_")).commutes(stim.PauliString(b.replace("I", "_")))
