#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cpgir/ir/ast.hpp"

namespace cpgir::passes {

/// Baseline lowering in the style of reg2mem: instead of deferring φ nodes
/// and eliminating them on the graph, every φ is demoted to a stack slot
/// (alloca + one store per predecessor + a load at the φ position), and every
/// SSA value used outside its defining block is likewise demoted (store after
/// the definition, reload before each cross-block use). The translated graph
/// of the demoted module is the comparison point for the declaration-based
/// representation.
inline void demote_to_memory(ir::IrModule& module) {
    for (auto& fn : module.functions) {
        if (fn.blocks.empty()) continue;

        auto terminator_pos = [](ir::IrBasicBlock& block) {
            for (size_t i = 0; i < block.instructions.size(); ++i)
                if (block.instructions[i].is_terminator()) return i;
            return block.instructions.size();
        };

        auto make_alloca = [](const std::string& name, const ir::TypeRef& type) {
            ir::IrInstruction a;
            a.opcode = ir::Opcode::Alloca;
            a.result_name = name;
            a.type_args.push_back(type);
            a.result_type = ir::pointer_to(type);
            a.raw_text = "%" + name + " = alloca " + ir::to_string(type);
            return a;
        };
        auto make_store = [](const ir::IrOperand& value, const std::string& slot,
                             const ir::TypeRef& type) {
            ir::IrInstruction s;
            s.opcode = ir::Opcode::Store;
            s.operands.push_back(value);
            s.operands.push_back(ir::IrOperand::local(slot, ir::pointer_to(type)));
            s.raw_text = "store " + ir::to_string(type) + " " + value.text + ", ptr %" + slot;
            return s;
        };
        auto make_load = [](const std::string& result, const std::string& slot,
                            const ir::TypeRef& type) {
            ir::IrInstruction l;
            l.opcode = ir::Opcode::Load;
            l.result_name = result;
            l.type_args.push_back(type);
            l.operands.push_back(ir::IrOperand::local(slot, ir::pointer_to(type)));
            l.result_type = type;
            l.raw_text = "%" + result + " = load " + ir::to_string(type) + ", ptr %" + slot;
            return l;
        };

        std::vector<ir::IrInstruction> entry_allocas;

        // --- demote φ instructions -------------------------------------
        for (auto& block : fn.blocks) {
            for (size_t pi = 0; pi < block.instructions.size(); ++pi) {
                if (block.instructions[pi].opcode != ir::Opcode::Phi) continue;
                // copy first: a predecessor store may land in this very block
                // (loop back-edge) and shift or reallocate the vector
                ir::IrInstruction phi = block.instructions[pi];
                ir::TypeRef type = phi.result_type;
                if (!type) type = ir::opaque_pointer();
                std::string slot = phi.result_name + ".mem";
                entry_allocas.push_back(make_alloca(slot, type));

                for (size_t i = 0; i + 1 < phi.operands.size(); i += 2) {
                    const ir::IrOperand& value = phi.operands[i];
                    const std::string& pred = phi.operands[i + 1].text;
                    ir::IrBasicBlock* pb = fn.find_block(pred);
                    if (!pb) continue;
                    size_t at = terminator_pos(*pb);
                    pb->instructions.insert(
                        pb->instructions.begin() + static_cast<ptrdiff_t>(at),
                        make_store(value, slot, type));
                    if (pb == &block && at <= pi) ++pi;
                }
                // the φ itself becomes the reload
                block.instructions[pi] = make_load(phi.result_name, slot, type);
            }
        }

        // --- demote values used outside their defining block -----------
        std::map<std::string, std::string> def_block;
        std::map<std::string, ir::TypeRef> def_type;
        for (auto& block : fn.blocks)
            for (auto& instr : block.instructions) {
                if (instr.opcode == ir::Opcode::Alloca) continue; // slots stay direct
                if (!instr.result_name.empty() && instr.result_type) {
                    def_block[instr.result_name] = block.label;
                    def_type[instr.result_name] = instr.result_type;
                }
            }

        std::set<std::string> crossing;
        for (auto& block : fn.blocks)
            for (auto& instr : block.instructions)
                for (auto& op : instr.operands) {
                    if (op.kind != ir::IrOperand::Kind::LocalRef) continue;
                    auto it = def_block.find(op.text);
                    if (it != def_block.end() && it->second != block.label)
                        crossing.insert(op.text);
                }

        int reload_seq = 0;
        for (const auto& name : crossing) {
            ir::TypeRef type = def_type[name];
            std::string slot = name + ".mem";
            entry_allocas.push_back(make_alloca(slot, type));

            // store right after the definition
            ir::IrBasicBlock* db = fn.find_block(def_block[name]);
            if (db)
                for (size_t i = 0; i < db->instructions.size(); ++i)
                    if (db->instructions[i].result_name == name) {
                        ir::IrOperand value = ir::IrOperand::local(name, type);
                        db->instructions.insert(
                            db->instructions.begin() + static_cast<ptrdiff_t>(i) + 1,
                            make_store(value, slot, type));
                        break;
                    }

            // reload before every cross-block use
            for (auto& block : fn.blocks) {
                if (block.label == def_block[name]) continue;
                for (size_t i = 0; i < block.instructions.size(); ++i) {
                    bool uses = false;
                    for (auto& op : block.instructions[i].operands)
                        if (op.kind == ir::IrOperand::Kind::LocalRef && op.text == name)
                            uses = true;
                    if (!uses) continue;
                    std::string reload = name + ".reload" + std::to_string(reload_seq++);
                    block.instructions.insert(
                        block.instructions.begin() + static_cast<ptrdiff_t>(i),
                        make_load(reload, slot, type));
                    ++i; // the use moved one slot down
                    for (auto& op : block.instructions[i].operands)
                        if (op.kind == ir::IrOperand::Kind::LocalRef && op.text == name) {
                            op.text = reload;
                        }
                }
            }
        }

        // slots live at the top of the entry block
        auto& entry = fn.blocks.front().instructions;
        entry.insert(entry.begin(), entry_allocas.begin(), entry_allocas.end());
    }
}

} // namespace cpgir::passes
