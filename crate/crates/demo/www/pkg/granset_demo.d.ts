/* tslint:disable */
/* eslint-disable */

export function fuse(intervals_json: string, faults: number): string;

export function fusionSweep(intervals_json: string): string;

export function granulate(table_csv: string, chain_json: string, target: string): string;

export function randomGraded(intervals_json: string, dist_json: string, draws: number, seed: number): string;

export function simulatedSweep(sensors: number, faulty: number, truth: number, seed: number, round: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly fuse: (a: number, b: number, c: number) => [number, number, number, number];
    readonly fusionSweep: (a: number, b: number) => [number, number, number, number];
    readonly granulate: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly randomGraded: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly simulatedSweep: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
