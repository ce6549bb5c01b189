"""
Exportación e Importación OpenQASM 3
====================================

Subconjunto de OpenQASM 3 para circuitos dinámicos:
- Declaraciones `qubit[n] q;` y `bit[m] c;`
- Compuertas estándar, `measure`, `reset`
- Bloques `if (c[i] == v && ...) { ... }` para condiciones de igualdad
- Condiciones de paridad como `if ((c[i] ^ c[j] ^ ...) == b)` precedidas
  por el marcador `// dynabench:parity`

Los metadatos (nombre, parámetros, qubits de sistema y registros) viajan en
comentarios `// dynabench:` para que la importación sea exacta.

Autor: Proyecto Probabilidades
Fecha: 18 de octubre de 2026
"""

import json
import re
from typing import List, Optional, Tuple

from circuito_dinamico import Circuito, Condicion, Instruccion, build_circuit


MARCADOR = "// dynabench:"
DEFINICION_RZZ = "gate rzz(theta) a, b { cx a, b; rz(theta) b; cx a, b; }"

_RE_QUBITS = re.compile(r"^qubit\[(\d+)\] q;$")
_RE_BITS = re.compile(r"^bit\[(\d+)\] c;$")
_RE_MEDICION = re.compile(r"^c\[(\d+)\] = measure q\[(\d+)\];$")
_RE_RESET = re.compile(r"^reset q\[(\d+)\];$")
_RE_COMPUERTA = re.compile(r"^([a-z]+)(?:\(([^)]*)\))? (q\[\d+\](?:, q\[\d+\])*);$")
_RE_IF_PARIDAD = re.compile(r"^if \(\((c\[\d+\](?: \^ c\[\d+\])*)\) == ([01])\) \{$")
_RE_IF_IGUAL = re.compile(r"^if \((c\[\d+\] == [01](?: && c\[\d+\] == [01])*)\) \{$")
_RE_INDICE = re.compile(r"\[(\d+)\]")


def _texto_instruccion(ins: Instruccion) -> str:
    if ins.es_medicion:
        return f"c[{ins.clbit}] = measure q[{ins.qubits[0]}];"
    if ins.es_reset:
        return f"reset q[{ins.qubits[0]}];"
    if not ins.es_compuerta:
        raise ValueError("❌ Construcción no soportada dentro de un bloque")
    operandos = ", ".join(f"q[{q}]" for q in ins.qubits)
    nombre = ins.nombre.lower()
    if ins.params:
        return f"{nombre}({', '.join(repr(float(p)) for p in ins.params)}) {operandos};"
    return f"{nombre} {operandos};"


def _texto_condicion(cond: Condicion) -> str:
    if cond.es_paridad:
        xor = " ^ ".join(f"c[{c}]" for c in cond.clbits)
        return f"if (({xor}) == {cond.valor}) {{"
    igualdades = " && ".join(f"c[{c}] == {v}" for c, v in zip(cond.clbits, cond.valor))
    return f"if ({igualdades}) {{"


def exportar_qasm(c: Circuito) -> str:
    """
    Texto OpenQASM 3 del circuito

    Returns:
    --------
    str
        Texto terminado en salto de línea; exportar→importar→exportar es estable
    """
    lineas = [
        "OPENQASM 3.0;",
        'include "stdgates.inc";',
        f"{MARCADOR}name {json.dumps(c.nombre)}",
        f"{MARCADOR}params {json.dumps(c.params, sort_keys=True)}",
        f"{MARCADOR}system {' '.join(str(q) for q in sorted(c.system_qubits))}",
        f"{MARCADOR}registers {json.dumps({k: list(v) for k, v in c.registros.items()}, sort_keys=True)}",
    ]
    usa_rzz = any(ins.nombre == "RZZ" for ins in c.instrucciones) or any(
        x.nombre == "RZZ" for ins in c.instrucciones for x in ins.cuerpo)
    if usa_rzz:
        lineas.append(DEFINICION_RZZ)
    lineas += [f"qubit[{c.num_qubits}] q;", f"bit[{c.num_clbits}] c;"]
    for ins in c.instrucciones:
        if ins.es_condicional:
            if ins.condicion.es_paridad:
                lineas.append(f"{MARCADOR}parity")
            lineas.append(_texto_condicion(ins.condicion))
            lineas += ["  " + _texto_instruccion(x) for x in ins.cuerpo]
            lineas.append("}")
        else:
            lineas.append(_texto_instruccion(ins))
    return "\n".join(lineas) + "\n"


def _indices(texto: str) -> List[int]:
    return [int(x) for x in _RE_INDICE.findall(texto)]


def _agregar_linea(destino, linea: str, numero: int):
    m = _RE_MEDICION.match(linea)
    if m:
        destino.measure(int(m.group(2)), int(m.group(1)))
        return
    m = _RE_RESET.match(linea)
    if m:
        destino.reset(int(m.group(1)))
        return
    m = _RE_COMPUERTA.match(linea)
    if m:
        params = [float(p) for p in m.group(2).split(",")] if m.group(2) else []
        destino.gate(m.group(1).upper(), _indices(m.group(3)), params)
        return
    raise ValueError(f"❌ Línea QASM {numero} no soportada: '{linea}'")


def _cerrar_bloque(constructor, condicion: Condicion, cuerpo: List[Tuple[int, str]]):
    apertura = constructor.si_paridad if condicion.es_paridad else constructor.si_igual
    valor = int(condicion.valor) if condicion.es_paridad else condicion.valor
    with apertura(condicion.clbits, valor) as rama:
        for numero, linea in cuerpo:
            _agregar_linea(rama, linea, numero)


def importar_qasm(texto: str) -> Circuito:
    """
    Reconstruir un circuito desde el subconjunto exportado

    Parameters:
    -----------
    texto : str
        Texto OpenQASM 3 con los marcadores `// dynabench:`

    Returns:
    --------
    Circuito
    """
    meta = {"name": "", "params": {}, "system": None, "registers": {}}
    n_qubits: Optional[int] = None
    constructor = None
    condicion: Optional[Condicion] = None
    cuerpo: List[Tuple[int, str]] = []
    for numero, cruda in enumerate(texto.splitlines(), start=1):
        linea = cruda.strip()
        if not linea or linea.startswith(("OPENQASM", "include", "gate ")):
            continue
        if linea.startswith(MARCADOR):
            clave, _, valor = linea[len(MARCADOR):].partition(" ")
            if clave == "system":
                meta["system"] = [int(q) for q in valor.split()]
            elif clave in ("name", "params", "registers"):
                meta[clave] = json.loads(valor)
            continue
        if linea.startswith("//"):
            continue
        m_q, m_c = _RE_QUBITS.match(linea), _RE_BITS.match(linea)
        if m_q:
            n_qubits = int(m_q.group(1))
            continue
        if m_c:
            if n_qubits is None:
                raise ValueError(f"❌ Declaración de bits antes de qubits en la línea {numero}")
            constructor = build_circuit(n_qubits, int(m_c.group(1)))
            continue
        if constructor is None:
            raise ValueError(f"❌ Línea QASM {numero} antes de las declaraciones")
        if linea == "}":
            if condicion is None:
                raise ValueError(f"❌ Llave de cierre sin bloque en la línea {numero}")
            _cerrar_bloque(constructor, condicion, cuerpo)
            condicion, cuerpo = None, []
            continue
        m_par, m_eq = _RE_IF_PARIDAD.match(linea), _RE_IF_IGUAL.match(linea)
        if m_par or m_eq:
            if condicion is not None:
                raise ValueError(f"❌ Bloques if anidados en la línea {numero}")
            if m_par:
                condicion = Condicion(tuple(_indices(m_par.group(1))), "parity", m_par.group(2))
            else:
                pares = re.findall(r"c\[(\d+)\] == ([01])", m_eq.group(1))
                condicion = Condicion(tuple(int(c) for c, _ in pares), "eq",
                                      "".join(v for _, v in pares))
            continue
        if condicion is not None:
            cuerpo.append((numero, linea))
        else:
            _agregar_linea(constructor, linea, numero)
    if constructor is None:
        raise ValueError("❌ El texto QASM no declara qubits y bits")
    if condicion is not None:
        raise ValueError("❌ Bloque if sin cerrar")
    return constructor.finalizar(system_qubits=meta["system"], nombre=meta["name"],
                                 params=meta["params"], registros=meta["registers"])
