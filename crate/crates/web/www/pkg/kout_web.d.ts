/* tslint:disable */
/* eslint-disable */

/**
 * Enumerates the polygons of `points_json` with at most `k` outside
 * points, returning at most `limit` of them with counts and statistics.
 */
export function enumerate_polygons(points_json: string, k: number, limit: number): string;

/**
 * `[[x, y], ...]` for a fresh general-position point set.
 */
export function generate(n: number, seed: number, range: number, convex: boolean): string;

/**
 * Parent chain of the polygon with vertex indices `verts_json`.
 */
export function parent_chain(points_json: string, verts_json: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly enumerate_polygons: (a: number, b: number, c: number, d: number) => [number, number];
    readonly generate: (a: number, b: number, c: number, d: number) => [number, number];
    readonly parent_chain: (a: number, b: number, c: number, d: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
